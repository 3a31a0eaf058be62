"""Packed Swiss Cheese expansions: zeta-regularized bulk + log-periodic terms.

Assembles the heat-trace and spectral-action expansions for sphere packings
under round scaling, contrasts a finite two-ball packing (exact rationals, no
poles) with the Ford packing (zeta-value coefficients plus oscillatory terms),
and prints the reconciliation report for the published leading constants.
"""

import math
from fractions import Fraction

from specexp import expansion as ex
from specexp import pscc
from specexp import zeta as zt

print("=" * 72)
print("Two-ball packing (radii 1 and 1/2): exact rational bulk, no poles")
print("=" * 72)
two_ball = zt.TruncatedString([(1, 1), (Fraction(1, 2), 1)])
print(pscc.expansion_table(pscc.round_heat_expansion(two_ball, 3, pscc.S4Geometry())))

print()
print("=" * 72)
print("Ford packing over S^4: zeta-value bulk plus pole terms (maxM = 2)")
print("=" * 72)
terms = pscc.round_heat_expansion(zt.FordString(), 2, pscc.S4Geometry())
bulk = [t for t in terms if t.kind == "bulk"]
print(pscc.expansion_table(bulk))
print(f"  ... plus {sum(t.kind == 'pole' for t in terms)} pole terms; "
      "the conjugate pairs at Re sigma = 1/4 carry the fractal oscillations")

print()
print("=" * 72)
print("Spectral action with the Gaussian test function at Lambda = 100")
print("=" * 72)
action = pscc.spectral_action(
    zt.FordString(), pscc.gaussian_test_function(), 100.0, 2, pscc.S4Geometry()
)
for t in action:
    if t.kind == "bulk":
        print(f"  Lambda^{int(t.exponent):+d} bulk row, value "
              f"{pscc.term_value(t, 100.0):+.6e}")
lp = [t for t in action if t.log_periodic]
print(f"  log-periodic rows: {len(lp)}; the slowest oscillation has")
first = min(lp, key=lambda t: t.log_periodic["b"])
print(f"    amplitude {first.log_periodic['amplitude']:.3e}, "
      f"Lambda^{first.log_periodic['a']:.2f}, "
      f"frequency b = {first.log_periodic['b']:.6f} (= first zero ordinate / 2)")

print()
print("=" * 72)
print("Reconciliation of the published leading constants for the Ford packing")
print("=" * 72)
print(pscc.ford_constants_report_text())
print("""
The Lambda^2 and Lambda^4 rows agree exactly with the published table.  The
f(0) and Lambda^1 rows differ by the fixed rational factors shown; the
pipeline values follow from composing the S^4 Dirac zeta with the string zeta
(11/90 x 1/6 and (2/3)/2 x 3/(2 pi^2)).""")

print("=" * 72)
print("Non-round scaling: zeta-regularized weights (bulk only)")
print("=" * 72)
geo = pscc.RWGeometry(ex.scale_factor("inflation", 1.0), 0.5)
for t in pscc.nonround_zeta_coefficients(two_ball, 2, geo):
    print(f"  tau^{int(t.exponent):+d}: {t.coeff:+.10f}")
print("  (the Ford string is rejected here: its zeta has a pole at s = 1)")
