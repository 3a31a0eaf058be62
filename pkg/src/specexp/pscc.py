"""Multifractal expansions: packed-sphere heat traces and spectral actions.

Round scaling (whole-spacetime rescale by each packing radius) turns the
single-geometry expansion into bulk terms weighted by string zeta values at
4-2M plus one term per string pole sigma, weighted by the Mellin transform of
the heat trace at sigma.  The S^4 geometry uses the exact closed forms; a
Robertson-Walker geometry uses the pointwise heat coefficients and a
model-series Mellin transform (the transform is only determined by the
asymptotic series up to an entire function, and that singular part is what
the truncated-series transform reproduces pole by pole).

Non-round scaling (spatial sections only) produces zeta-regularized bulk
weights at s = 3 and s = 1; its pole terms have no closed form and are out of
scope, so ``nonround_zeta_coefficients`` emits the bulk series only.

All assembly is pure; output ordering is deterministic (bulk by order, poles
by real then imaginary part).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import expansion as exp_mod
from . import zeta as zeta_mod
from .expansion import ScaleFactor, rescale_uv, term_scaling_exponent, verify_uv_scaling
from .specfun import gamma_complex
from .zeta import (
    AnalyticString,
    ExactToken,
    FordString,
    FractalString,
    PoleError,
    PoleTerm,
    TruncatedString,
    string_poles,
    string_zeta,
)

__all__ = [
    "CollisionError",
    "ExpansionTerm",
    "TestFunctionMoments",
    "gaussian_test_function",
    "S4Geometry",
    "RWGeometry",
    "s4_heat_coefficient",
    "round_heat_expansion",
    "spectral_action",
    "s4_packing_action_terms",
    "ford_constants_reconciliation",
    "nonround_zeta_coefficients",
    "MellinFunction",
    "gamma_mellin",
    "singular_expansion_combine",
    "rescale_uv",
    "term_value",
    "expansion_to_json",
    "expansion_table",
]


class CollisionError(ValueError):
    """A string pole collides with a bulk exponent (hypothesis violation)."""


_COLLISION_TOL = 1e-9


@dataclass(frozen=True)
class ExpansionTerm:
    """One term of a heat-trace or spectral-action expansion.

    ``exponent`` is the power of tau (heat) or Lambda (action).  ``coeff`` may
    be exact (Fraction or ExactToken) or numeric.  Pole terms carry the pole
    location in ``provenance`` and, for conjugate pairs, the merged real
    log-periodic presentation {amplitude, a, b, phase} meaning
    amplitude * X^a cos(b ln X + phase).
    """

    exponent: complex | Fraction
    coeff: object
    kind: str  # "bulk" | "pole"
    provenance: object  # order M for bulk, sigma (complex) or a row label for poles
    log_periodic: dict | None = None


@dataclass(frozen=True)
class TestFunctionMoments:
    """Moments of the cutoff test function f.

    ``moment(alpha)`` must return f_alpha = int_0^inf f(v) v^(alpha-1) dv for
    Re alpha > 0 (complex alpha allowed), f(0) at alpha = 0, and the
    sign-normalized derivative value for negative even integers.
    """

    f0: float
    moment: Callable[[complex], complex]


def gaussian_test_function() -> TestFunctionMoments:
    """Moments of f(x) = exp(-x^2): f_alpha = Gamma(alpha/2)/2 for Re alpha > 0."""

    def moment(alpha: complex) -> complex:
        alpha = complex(alpha)
        if alpha == 0:
            return 1.0
        if alpha.imag == 0 and alpha.real < 0:
            a = alpha.real
            if a == int(a) and int(a) % 2 == 0:
                j = -int(a) // 2
                return float(
                    math.factorial(2 * j) // math.factorial(j)
                )
            raise ValueError("negative moments defined at even integers only")
        return gamma_complex(alpha / 2.0) / 2.0

    return TestFunctionMoments(f0=1.0, moment=moment)


# ----------------------------------------------------------------------
# geometries
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class S4Geometry:
    """Unit round 4-sphere (time-integrated exact rational heat coefficients)."""


@dataclass(frozen=True)
class RWGeometry:
    """Robertson-Walker geometry evaluated pointwise at cosmic time t."""

    factor: ScaleFactor
    t: float


Geometry = S4Geometry | RWGeometry


def s4_heat_coefficient(M: int) -> Fraction:
    """Exact coefficient of tau^(2M-4) in the unit-S^4 heat trace.

    Leading terms 2/3 and -2/3; for M >= 2 the value
    (4/3)(-1)^M (zeta(1-2M) - zeta(3-2M)) / (M-2)! from the Dirac spectrum.
    """
    if M < 0:
        raise ValueError("M must be non-negative")
    if M == 0:
        return Fraction(2, 3)
    if M == 1:
        return Fraction(-2, 3)
    z1 = zeta_mod.zeta_exact(1 - 2 * M).rat
    z3 = zeta_mod.zeta_exact(3 - 2 * M).rat
    return Fraction(4, 3) * (-1) ** M * (z1 - z3) / math.factorial(M - 2)


def _bulk_coefficient(geometry: Geometry, M: int):
    if isinstance(geometry, S4Geometry):
        return s4_heat_coefficient(M)
    return exp_mod.eval_numeric(
        exp_mod.a2M(M), lambda i: geometry.factor.deriv(i, geometry.t)
    )


def _string_zeta_value(string: FractalString, n: int):
    """Prefer the exact token/Fraction at integer arguments."""
    if isinstance(string, FordString):
        return zeta_mod.ford_zeta_exact(n)
    if isinstance(string, TruncatedString) and string.pairs is not None and all(
        isinstance(r, (int, Fraction)) for r, _ in string.pairs
    ):
        return string.zeta(n)
    return string.zeta(complex(n))


def _coeff_mul(a, b):
    """Multiply expansion coefficients, keeping exactness when possible."""
    if isinstance(a, ExactToken) and isinstance(b, (int, Fraction, ExactToken)):
        return a * b
    if isinstance(b, ExactToken) and isinstance(a, (int, Fraction)):
        return b * a
    if isinstance(a, Fraction) and isinstance(b, (int, Fraction)):
        return a * b
    if isinstance(a, (int, Fraction)) and isinstance(b, Fraction):
        return b * a
    fa = float(a) if isinstance(a, (Fraction, ExactToken)) else a
    fb = float(b) if isinstance(b, (Fraction, ExactToken)) else b
    out = fa * fb
    if isinstance(out, complex) and out.imag == 0:
        return out.real
    return out


def _check_collisions(poles: Sequence[PoleTerm], max_m: int):
    for p in poles:
        sigma = complex(p.sigma)
        if abs(sigma.imag) < _COLLISION_TOL:
            for M in range(0, max_m + 1):
                if abs(sigma.real - (4 - 2 * M)) < _COLLISION_TOL:
                    raise CollisionError(
                        f"string pole at {sigma.real} collides with the bulk "
                        f"exponent 4-2M for M={M}"
                    )


def _default_strip(max_m: int):
    return ((4.0 - 2.0 * max_m, 4.5), (-46.0, 46.0))


def heat_mellin_model(coeffs: Sequence[tuple[int, float]], sigma: complex) -> complex:
    """Mellin transform of the truncated model series sum c Jahre tau^(2M-4).

    Each power tau^p contributes 1/(sigma + p) (the analytic continuation of
    its unit-interval Mellin integral; the tail carries no extra information
    about the asymptotic series).  Poles and residues reproduce the duality
    between series terms and transform poles.
    """
    total = 0j
    for p, c in coeffs:
        den = sigma + p
        if abs(den) < _COLLISION_TOL:
            raise CollisionError(f"Mellin value requested at the series pole -({p})")
        total += c / den
    return total


def _heat_mellin(geometry: Geometry, sigma: complex, max_m: int) -> complex:
    """tilde f(sigma) = Mellin transform of the single-geometry heat trace."""
    if isinstance(geometry, S4Geometry):
        return gamma_complex(sigma / 2.0) / 2.0 * zeta_mod.dirac_zeta_s4(sigma)
    coeffs = [
        (2 * M - 4, _bulk_coefficient(geometry, M)) for M in range(0, max_m + 1)
    ]
    return heat_mellin_model(coeffs, sigma)


def round_heat_expansion(
    string: FractalString,
    max_m: int,
    geometry: Geometry,
    pole_strip=None,
) -> list[ExpansionTerm]:
    """Heat-trace expansion of the packed geometry under round scaling.

    Bulk terms tau^(2M-4) zeta_string(4-2M) c_2M plus, for every string pole
    sigma in the strip, a term tilde-f(sigma) Res_sigma tau^(-sigma).  Raises
    CollisionError when a pole sits on a bulk exponent (the expansion
    hypothesis requires the string zeta regular at the integers <= 4).
    """
    if max_m < 0:
        raise ValueError("max_m must be non-negative")
    strip = pole_strip if pole_strip is not None else _default_strip(max_m)
    poles = string_poles(string, strip)
    _check_collisions(poles, max_m)
    terms: list[ExpansionTerm] = []
    for M in range(0, max_m + 1):
        zval = _string_zeta_value(string, 4 - 2 * M)
        c2m = _bulk_coefficient(geometry, M)
        terms.append(
            ExpansionTerm(
                exponent=Fraction(2 * M - 4),
                coeff=_coeff_mul(zval, c2m),
                kind="bulk",
                provenance=M,
            )
        )
    for p in poles:
        sigma = complex(p.sigma)
        weight = _heat_mellin(geometry, sigma, max_m)
        terms.append(
            ExpansionTerm(
                exponent=-sigma,
                coeff=weight * p.residue,
                kind="pole",
                provenance=sigma,
            )
        )
    return terms


# ----------------------------------------------------------------------
# spectral action under round scaling
# ----------------------------------------------------------------------

def _merge_conjugate_poles(pole_terms: list[tuple[complex, complex]]):
    """Collapse sigma/conjugate pairs to log-periodic rows; keep real poles."""
    out = []
    used = set()
    for i, (sigma, c) in enumerate(pole_terms):
        if i in used:
            continue
        if abs(sigma.imag) < 1e-12:
            out.append((sigma, c, None))
            continue
        partner = None
        for j in range(i + 1, len(pole_terms)):
            if j in used:
                continue
            s2, c2 = pole_terms[j]
            if abs(s2 - sigma.conjugate()) < 1e-9:
                partner = j
                break
        if partner is None:
            out.append((sigma, c, None))
            continue
        used.add(partner)
        rep = sigma if sigma.imag > 0 else pole_terms[partner][0]
        crep = c if sigma.imag > 0 else pole_terms[partner][1]
        log_periodic = {
            "amplitude": 2.0 * abs(crep),
            "a": rep.real,
            "b": rep.imag,
            "phase": cmath.phase(crep),
        }
        out.append((rep, crep, log_periodic))
    return out


def spectral_action(
    string: FractalString,
    moments: TestFunctionMoments,
    lam: float,
    max_m: int,
    geometry: Geometry,
    pole_strip=None,
) -> list[ExpansionTerm]:
    """Lambda-graded spectral-action expansion on the packed geometry.

    Bulk rows Lambda^(4-2M) f_(4-2M) zeta_string(4-2M) c_2M; pole rows
    tilde-f(sigma) f_sigma Res_sigma Lambda^sigma, with complex-conjugate pole
    pairs merged into the real form 2|c| Lambda^a cos(b ln Lambda + phase).
    """
    if lam <= 0:
        raise ValueError("Lambda must be positive")
    strip = pole_strip if pole_strip is not None else _default_strip(max_m)
    poles = string_poles(string, strip)
    _check_collisions(poles, max_m)
    terms: list[ExpansionTerm] = []
    for M in range(0, max_m + 1):
        alpha = 4 - 2 * M
        f_alpha = moments.f0 if alpha == 0 else moments.moment(alpha)
        zval = _string_zeta_value(string, alpha)
        c2m = _bulk_coefficient(geometry, M)
        coeff = _coeff_mul(_coeff_mul(zval, c2m), f_alpha)
        terms.append(
            ExpansionTerm(
                exponent=Fraction(alpha),
                coeff=coeff,
                kind="bulk",
                provenance=M,
            )
        )
    pole_rows = []
    for p in poles:
        sigma = complex(p.sigma)
        weight = _heat_mellin(geometry, sigma, max_m)
        f_sigma = moments.moment(sigma)
        pole_rows.append((sigma, weight * f_sigma * p.residue))
    for sigma, c, log_periodic in _merge_conjugate_poles(pole_rows):
        terms.append(
            ExpansionTerm(
                exponent=sigma,
                coeff=c,
                kind="pole",
                provenance=sigma,
                log_periodic=log_periodic,
            )
        )
    return terms


# ----------------------------------------------------------------------
# the S^4-packing leading-term template and its reconciliation report
# ----------------------------------------------------------------------

def s4_packing_action_terms(
    string: FractalString,
    moments: TestFunctionMoments | None = None,
    pole_strip=None,
) -> list[ExpansionTerm]:
    """Leading spectral-action rows for a packing of round 4-spheres.

    Emits the packing template
        f(0) zeta_D(0) zeta_string(0),  f_2 Lambda^2 zeta_string(2)/2,
        f_4 Lambda^4 zeta_string(4)/2,  and per pole f_sigma zeta_D(sigma)/2 Res,
    with exact tokens wherever the string provides them.  Moment factors are
    included when ``moments`` is given; otherwise rows carry the bare
    zeta-side constants (the shape used for reconciliation reports).
    """
    strip = pole_strip if pole_strip is not None else ((-8.5, 4.5), (-46.0, 46.0))
    rows: list[ExpansionTerm] = []

    def f_of(alpha):
        if moments is None:
            return 1
        return moments.f0 if alpha == 0 else moments.moment(alpha)

    z0 = _coeff_mul(zeta_mod.dirac_zeta_s4_exact(0), _string_zeta_value(string, 0))
    rows.append(
        ExpansionTerm(Fraction(0), _coeff_mul(z0, f_of(0)), "bulk", "f(0)")
    )
    for alpha in (2, 4):
        zval = _string_zeta_value(string, alpha)
        half = (
            zval * Fraction(1, 2)
            if isinstance(zval, (ExactToken, Fraction))
            else zval / 2.0
        )
        rows.append(
            ExpansionTerm(
                Fraction(alpha), _coeff_mul(half, f_of(alpha)), "bulk", f"Lambda^{alpha}"
            )
        )
    for p in string_poles(string, strip):
        sigma = complex(p.sigma)
        if abs(sigma.imag) < 1e-12 and abs(sigma.real - round(sigma.real)) < 1e-12 and round(
            sigma.real
        ) <= 1:
            zd = zeta_mod.dirac_zeta_s4_exact(int(round(sigma.real)))
            weight = zd * Fraction(1, 2)
            coeff = (
                weight * p.exact
                if p.exact is not None
                else _coeff_mul(weight, p.residue)
            )
        else:
            coeff = zeta_mod.dirac_zeta_s4(sigma) / 2.0 * p.residue
        coeff = _coeff_mul(coeff, f_of(sigma))
        rows.append(ExpansionTerm(sigma, coeff, "pole", sigma))
    return rows


PUBLISHED_FORD_CONSTANTS = {
    "f(0)": ExactToken(Fraction(11, 140)),
    "Lambda^1": ExactToken(Fraction(1), pi_pow=-2),
    "Lambda^2": ExactToken(Fraction(45, 4), pi_pow=-4, zeta_num=(3,)),
    "Lambda^4": ExactToken(Fraction(4725, 16), pi_pow=-8, zeta_num=(7,)),
}


def ford_constants_reconciliation() -> dict:
    """Ford-packing leading-term report: pipeline values next to the printed
    constants, with their exact ratios.

    The Lambda^2 and Lambda^4 rows must agree; the f(0) and Lambda^1 rows are
    known to disagree with the printed table, so both values and their ratio
    are reported instead of asserting either.
    """
    ford = FordString()
    res1 = ExactToken(Fraction(3, 2), pi_pow=-2)  # residue of the string zeta at 1
    pipeline = {
        "f(0)": zeta_mod.dirac_zeta_s4_exact(0) * zeta_mod.ford_zeta_exact(0),
        "Lambda^1": zeta_mod.dirac_zeta_s4_exact(1) * Fraction(1, 2) * res1,
        "Lambda^2": zeta_mod.ford_zeta_exact(2) * Fraction(1, 2),
        "Lambda^4": zeta_mod.ford_zeta_exact(4) * Fraction(1, 2),
    }
    report = {}
    for row, printed in PUBLISHED_FORD_CONSTANTS.items():
        pipe = pipeline[row]
        ratio = pipe / printed
        report[row] = {
            "pipeline": pipe,
            "printed": printed,
            "ratio": ratio,
            "match": pipe == printed,
        }
    return report


def ford_constants_report_text() -> str:
    rep = ford_constants_reconciliation()
    lines = ["row        pipeline                 printed                  ratio      match"]
    for row, data in rep.items():
        lines.append(
            f"{row:<10} {str(data['pipeline']):<24} {str(data['printed']):<24} "
            f"{str(data['ratio']):<10} {'yes' if data['match'] else 'NO'}"
        )
    return "\n".join(lines)


# ----------------------------------------------------------------------
# non-round scaling: zeta-regularized bulk series
# ----------------------------------------------------------------------

def nonround_zeta_coefficients(
    string: FractalString,
    max_m: int,
    geometry: Geometry | None = None,
) -> list[ExpansionTerm]:
    """Bulk terms of the non-round-scaled expansion.

    The series carries weights zeta_string(3) and zeta_string(1):
        1/4 (w3 C^(-5/2,2)_M - w1 C^(-1/2,0)_M) tau^(M-2)
      + 1/2  w3 C^(-3/2,0)_M tau^(M-4).
    Pole contributions have no closed form here and are not emitted.  Without
    a geometry the rows carry the bare weights, labelled by their C-factor;
    with one, the bridge-integrated C-values are folded in and rows sharing a
    tau-power are merged.  A string with a pole at s = 1 (e.g. Ford) fails.
    """
    try:
        w3 = _string_zeta_value(string, 3)
        w1 = _string_zeta_value(string, 1)
    except PoleError as exc:
        raise PoleError(f"divergent zeta_string(1) for this packing: {exc}") from exc
    if geometry is None:
        rows = []
        for M in range(0, max_m + 1):
            if M % 2 == 1:
                continue  # odd orders integrate to zero against the bridge
            quarter_w3 = _coeff_mul(w3, Fraction(1, 4))
            quarter_w1 = _coeff_mul(w1, Fraction(-1, 4))
            half_w3 = _coeff_mul(w3, Fraction(1, 2))
            rows.append(
                ExpansionTerm(Fraction(M - 2), quarter_w3, "bulk", (M, "C(-5/2,2)"))
            )
            rows.append(
                ExpansionTerm(Fraction(M - 2), quarter_w1, "bulk", (M, "C(-1/2,0)"))
            )
            rows.append(
                ExpansionTerm(Fraction(M - 4), half_w3, "bulk", (M, "C(-3/2,0)"))
            )
        return rows
    if isinstance(geometry, S4Geometry):
        raise ValueError("non-round scaling needs a pointwise RW geometry")
    derivs = lambda i: geometry.factor.deriv(i, geometry.t)  # noqa: E731
    rows = []
    for K in range(0, max_m + 1):
        # complete coefficient of tau^(2K-4): the 1/2-weighted main branch at
        # order 2K plus the 1/4-weighted pair at order 2K-2 (odd orders vanish)
        coeff = 0.5 * float(w3) * exp_mod.eval_numeric(
            exp_mod.integrate_bridge(exp_mod.crm_direct(exp_mod.R_MAIN, 0, 2 * K)),
            derivs,
        )
        if K >= 1:
            c_plus = exp_mod.eval_numeric(
                exp_mod.integrate_bridge(
                    exp_mod.crm_direct(exp_mod.R_PLUS, 2, 2 * K - 2)
                ),
                derivs,
            )
            c_minus = exp_mod.eval_numeric(
                exp_mod.integrate_bridge(
                    exp_mod.crm_direct(exp_mod.R_MINUS, 0, 2 * K - 2)
                ),
                derivs,
            )
            coeff += 0.25 * (float(w3) * c_plus - float(w1) * c_minus)
        rows.append(ExpansionTerm(Fraction(2 * K - 4), coeff, "bulk", K))
    return rows


# ----------------------------------------------------------------------
# generic singular-expansion combination
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MellinFunction:
    """A Mellin transform: evaluator plus its table of simple poles.

    A pole at alpha with residue c corresponds to the term c u^(-alpha) in the
    small-argument expansion of the inverse transform.
    """

    evaluator: Callable[[complex], complex]
    poles: tuple[PoleTerm, ...]


def gamma_mellin(max_order: int = 12) -> MellinFunction:
    """Mellin transform of exp(-u): Gamma, with poles at -k, residues (-1)^k/k!."""
    poles = tuple(
        PoleTerm(complex(-k, 0.0), complex((-1) ** k / math.factorial(k)))
        for k in range(0, max_order + 1)
    )
    return MellinFunction(evaluator=gamma_complex, poles=poles)


def singular_expansion_combine(
    string: FractalString, mellin_of_f: MellinFunction
) -> list[ExpansionTerm]:
    """Small-argument expansion of g(u) = sum over radii a of f(u/a).

    The transform of g is zeta_string(z) M(f)(z); its singular expansion
    merges the poles of M(f) (weighted by string zeta values) with the poles
    of the string zeta (weighted by M(f) values).  The two pole sets must be
    disjoint.
    """
    string_pole_list = string_poles(string)
    for pf in mellin_of_f.poles:
        for ps in string_pole_list:
            if abs(complex(pf.sigma) - complex(ps.sigma)) < _COLLISION_TOL:
                raise CollisionError(
                    f"pole of the transform at {pf.sigma} collides with a string pole"
                )
    terms: list[ExpansionTerm] = []
    for pf in mellin_of_f.poles:
        alpha = complex(pf.sigma)
        weight = string_zeta(string, alpha if alpha.imag else alpha.real)
        terms.append(
            ExpansionTerm(
                exponent=-alpha,
                coeff=_coeff_mul(weight, pf.residue),
                kind="bulk",
                provenance=alpha,
            )
        )
    for ps in string_pole_list:
        sigma = complex(ps.sigma)
        terms.append(
            ExpansionTerm(
                exponent=-sigma,
                coeff=mellin_of_f.evaluator(sigma) * ps.residue,
                kind="pole",
                provenance=sigma,
            )
        )
    terms.sort(key=lambda t: (complex(t.exponent).real, complex(t.exponent).imag))
    return terms


# ----------------------------------------------------------------------
# presentation helpers
# ----------------------------------------------------------------------

def term_value(term: ExpansionTerm, x: float) -> float:
    """Numeric value of a term at tau/Lambda = x (log-periodic rows evaluated
    in their merged real form)."""
    if term.log_periodic:
        lp = term.log_periodic
        return lp["amplitude"] * x ** lp["a"] * math.cos(lp["b"] * math.log(x) + lp["phase"])
    expo = complex(term.exponent)
    coeff = term.coeff
    cval = complex(float(coeff)) if isinstance(coeff, (Fraction, ExactToken)) else complex(coeff)
    val = cval * complex(x) ** expo
    return val.real


def expansion_to_json(terms: Sequence[ExpansionTerm]) -> list[dict]:
    out = []
    for t in terms:
        expo = complex(t.exponent)
        row: dict = {
            "kind": t.kind,
            "exponent": {"re": expo.real, "im": expo.imag},
        }
        if isinstance(t.coeff, (Fraction, ExactToken)):
            row["coeff"] = {"exact": str(t.coeff), "value": float(t.coeff)}
        else:
            c = complex(t.coeff)
            row["coeff"] = {"re": c.real, "im": c.imag}
        if t.log_periodic:
            row["logPeriodic"] = dict(t.log_periodic)
        out.append(row)
    return out


def expansion_table(terms: Sequence[ExpansionTerm]) -> str:
    """Aligned plain-text table of an expansion."""
    lines = [f"{'exponent':>18}  {'coefficient':>24}  kind"]
    for t in terms:
        expo = complex(t.exponent)
        e_txt = f"{expo.real:.6g}" if expo.imag == 0 else f"{expo.real:.4g}{expo.imag:+.4g}i"
        if isinstance(t.coeff, (Fraction, ExactToken)):
            c_txt = str(t.coeff)
        else:
            c = complex(t.coeff)
            c_txt = f"{c.real:.10g}" if c.imag == 0 else f"{c.real:.6g}{c.imag:+.6g}i"
        extra = ""
        if t.log_periodic:
            lp = t.log_periodic
            extra = (
                f"  [{lp['amplitude']:.6g} X^{lp['a']:.4g} "
                f"cos({lp['b']:.6g} ln X {lp['phase']:+.4g})]"
            )
        lines.append(f"{e_txt:>18}  {c_txt:>24}  {t.kind}{extra}")
    return "\n".join(lines)
