"""Assembly of the Laurent coefficients C^(r,m)_M and the heat coefficients.

Two independent routes build the same series: ``crm_direct`` enumerates the
flat composition sum, ``crm_bell`` reorganizes it through partial Bell
polynomials over the u- and v-sequences

    u_n = B^(n)(t) 2^(n/2) x_n(alpha),     v_n = A^(n+1)(t) 2^(n/2) x_n(alpha),

with u_0 = B and v_0 = A'.  ``integrate_bridge`` replaces every formal letter
multiset by its exact bridge moment, after which all sqrt2 factors must cancel
(asserted).  ``a2M`` combines three (r, m) pairs into the coefficient of
tau^(2M-4) in the heat trace, pointwise in t.

Assembly is pure; terms are reduced in canonical key order so output is
bit-identical however the work is scheduled.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import bell, bridge
from .symcore import (
    ZERO,
    DerivMonomial,
    ExactScalar,
    SymPoly,
    eval_numeric,
    to_a_form,
)

__all__ = [
    "MomentTerm",
    "crm_direct",
    "crm_bell",
    "integrate_bridge",
    "a2M",
    "heat_trace_series",
    "ScaleFactor",
    "scale_factor",
    "FAMILIES",
    "rescale_uv",
    "term_scaling_exponent",
    "verify_uv_scaling",
    "ConsistencyError",
]


class ConsistencyError(RuntimeError):
    """Internal cross-check failed (e.g. residual sqrt2 after integration)."""


@dataclass(frozen=True)
class MomentTerm:
    """One summand of a C^(r,m)_M series before bridge integration.

    ``scalar`` carries all rational and sqrt2 factors, ``sym`` the derivative
    monomial in A/B symbols, and ``letters`` the multiset of formal x_n(alpha)
    markers as a sorted tuple (letter 0 is absorbed since x_0 = 1).
    """

    scalar: ExactScalar
    sym: DerivMonomial
    letters: tuple[int, ...]

    def sym_poly(self) -> SymPoly:
        return SymPoly.monomial(self.sym, self.scalar)


def _binom_general(top: Fraction, k: int) -> Fraction:
    """Falling-factorial binomial: top can be any rational."""
    out = Fraction(1)
    for j in range(k):
        out *= top - j
    return out / math.factorial(k)


def _compositions(n: int):
    """Ordered tuples of positive integers summing to n (one empty for n=0)."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _compositions_list(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_compositions(n))


def _half_units(x: Fraction) -> int:
    """Exact 2x as an int; rejects values that are not half-integers."""
    two_x = 2 * Fraction(x)
    if two_x.denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    return int(two_x)


def crm_direct(r: Fraction | int, m: int, M: int) -> list[MomentTerm]:
    """Terms of C^(r,m)_M by direct enumeration of the composition sum.

    The sum runs over n >= 0 with N = M - 2n >= 0, ordered tuples
    (l_1..l_k) and (q_1..q_p) of positive integers with total N, weighted by
    binom(r-n, k) binom(2n+m, p) / (4^n n!) and the per-letter factors
    2^(l/2)/l!; the 2^(N/2) collects into the sqrt2 part of the scalar.
    """
    r = Fraction(r)
    if m < 0 or M < 0:
        raise ValueError("m and M must be non-negative")
    two_r = _half_units(r)
    terms: list[MomentTerm] = []
    for n in range(0, M // 2 + 1):
        N = M - 2 * n
        base = Fraction(1, 4**n * math.factorial(n))
        for beta in range(0, N + 1):
            for ls in _compositions_list(beta):
                k = len(ls)
                bin_u = _binom_general(r - n, k)
                if bin_u == 0:
                    continue
                for qs in _compositions_list(N - beta):
                    p = len(qs)
                    bin_v = _binom_general(Fraction(2 * n + m), p)
                    if bin_v == 0:
                        continue
                    rat = base * bin_u * bin_v
                    for l in ls:
                        rat /= math.factorial(l)
                    for q in qs:
                        rat /= math.factorial(q)
                    scalar = ExactScalar.sqrt2_power(N) * rat
                    b_exp = Counter(ls)
                    a_exp = Counter(q + 1 for q in qs)
                    a_exp[1] += 2 * n + m - p
                    mono = DerivMonomial(
                        two_r - 2 * n - 2 * k,
                        tuple(a_exp.items()),
                        tuple(b_exp.items()),
                    )
                    terms.append(MomentTerm(scalar, mono, tuple(sorted(ls + qs))))
    return terms


# ----------------------------------------------------------------------
# Bell-polynomial route
# ----------------------------------------------------------------------

class _UVTerms:
    """Commutative-ring carrier for Bell evaluation over u/v sequences.

    Elements are canonical maps (monomial, letters) -> ExactScalar.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @staticmethod
    def one() -> "_UVTerms":
        return _UVTerms({(DerivMonomial(0), ()): ExactScalar(1)})

    @staticmethod
    def u_letter(i: int) -> "_UVTerms":
        mono = DerivMonomial(0, (), ((i, 1),))
        return _UVTerms({(mono, (i,)): ExactScalar.sqrt2_power(i)})

    @staticmethod
    def v_letter(i: int) -> "_UVTerms":
        mono = DerivMonomial(0, ((i + 1, 1),), ())
        return _UVTerms({(mono, (i,)): ExactScalar.sqrt2_power(i)})

    def __add__(self, other: "_UVTerms") -> "_UVTerms":
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = out.get(key, ZERO) + c
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
        return _UVTerms(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _UVTerms()
            return _UVTerms({k: c * other for k, c in self.terms.items()})
        out: dict = {}
        for (m1, w1), c1 in self.terms.items():
            for (m2, w2), c2 in other.terms.items():
                key = (m1 * m2, tuple(sorted(w1 + w2)))
                acc = out.get(key, ZERO) + c1 * c2
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc
        return _UVTerms(out)

    __rmul__ = __mul__


def crm_bell(r: Fraction | int, m: int, order: int) -> list[MomentTerm]:
    """Terms of C^(r,m)_{order} (order = 2M even) via partial Bell polynomials.

    Same series as ``crm_direct`` reorganized as
    sum over n, k, p, beta of  binom(r-n,k) binom(2n+m,p) binom(2M-2n,beta)
    k! p! / (4^n n! (2M-2n)!) u_0^(r-n-k) v_0^(2n+m-p)
    B_{beta,k}(u_1,...) B_{2M-2n-beta,p}(v_1,...).
    """
    r = Fraction(r)
    if order % 2 != 0 or order < 0:
        raise ValueError("crm_bell expects an even non-negative target order")
    M = order // 2
    two_r = _half_units(r)
    one = _UVTerms.one()
    total: dict = {}
    for n in range(0, M + 1):
        width = 2 * M - 2 * n
        u_args = [_UVTerms.u_letter(i) for i in range(1, width + 2)]
        v_args = [_UVTerms.v_letter(i) for i in range(1, width + 2)]
        for k in range(0, 2 * M + 1):
            bin_u = _binom_general(r - n, k)
            if bin_u == 0:
                continue
            for p in range(0, 2 * M + 1):
                bin_v = _binom_general(Fraction(2 * n + m), p)
                if bin_v == 0:
                    continue
                pref_np = (
                    bin_u
                    * bin_v
                    * Fraction(
                        math.factorial(k) * math.factorial(p),
                        4**n * math.factorial(n) * math.factorial(width),
                    )
                )
                for beta in range(0, width + 1):
                    bell_u = bell.bell_polynomial(beta, k, u_args, one=one)
                    bell_v = bell.bell_polynomial(width - beta, p, v_args, one=one)
                    piece = bell_u * bell_v
                    if not piece.terms:
                        continue
                    coeff = pref_np * _binom_int(width, beta)
                    base_mono = DerivMonomial(
                        two_r - 2 * n - 2 * k,
                        ((1, 2 * n + m - p),),
                        (),
                    )
                    contrib = piece * coeff
                    for (mono, letters), c in contrib.terms.items():
                        key = (base_mono * mono, letters)
                        acc = total.get(key, ZERO) + c
                        if acc.is_zero():
                            total.pop(key, None)
                        else:
                            total[key] = acc
    return [
        MomentTerm(c, mono, letters)
        for (mono, letters), c in sorted(
            total.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1])
        )
    ]


def _binom_int(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# ----------------------------------------------------------------------
# bridge integration and heat coefficients
# ----------------------------------------------------------------------

def integrate_bridge(terms: Iterable[MomentTerm]) -> SymPoly:
    """Replace each letter multiset by its exact bridge moment and sum.

    Terms whose letter degree is odd integrate to zero.  The surviving sum
    must be sqrt2-free; a residual sqrt2 component signals an internal
    inconsistency in the assembly and raises ConsistencyError.
    """
    ordered = sorted(terms, key=lambda t: (t.sym.sort_key(), t.letters))
    acc: dict[DerivMonomial, ExactScalar] = {}
    for term in ordered:
        if term.letters:
            moment = bridge.moment_product(Counter(term.letters))
            if moment == 0:
                continue
            contrib = term.scalar * moment
        else:
            contrib = term.scalar
        cur = acc.get(term.sym, ZERO) + contrib
        if cur.is_zero():
            acc.pop(term.sym, None)
        else:
            acc[term.sym] = cur
    for mono, coeff in acc.items():
        if not coeff.is_rational():
            raise ConsistencyError(
                f"residual sqrt2 component {coeff} at {mono!r} after integration"
            )
    return SymPoly(acc)


R_MAIN = Fraction(-3, 2)
R_PLUS = Fraction(-5, 2)
R_MINUS = Fraction(-1, 2)


@lru_cache(maxsize=None)
def a2M(M: int) -> SymPoly:
    """Coefficient of tau^(2M-4) in the heat trace, pointwise in t.

    a_0 = B^(-3/2)/2; for M >= 1 the combination
    1/2 C_{2M}^(-3/2,0) + 1/4 (C_{2M-2}^(-5/2,2) - C_{2M-2}^(-1/2,0))
    integrated against the bridge measure.
    """
    if M < 0:
        raise ValueError("M must be non-negative")
    main = integrate_bridge(crm_direct(R_MAIN, 0, 2 * M)).scale(Fraction(1, 2))
    if M == 0:
        return main
    plus = integrate_bridge(crm_direct(R_PLUS, 2, 2 * M - 2))
    minus = integrate_bridge(crm_direct(R_MINUS, 0, 2 * M - 2))
    return main + (plus - minus).scale(Fraction(1, 4))


# ----------------------------------------------------------------------
# scale-factor families and numeric evaluation
# ----------------------------------------------------------------------

def _falling(alpha: float, i: int) -> float:
    out = 1.0
    for j in range(i):
        out *= alpha - j
    return out


@dataclass(frozen=True)
class ScaleFactor:
    """Named expansion-factor family; deriv(i, t) returns a^(i)(t)."""

    name: str
    deriv: Callable[[int, float], float]


def scale_factor(
    family: str, H: float = 1.0, fn: Callable[[int, float], float] | None = None
) -> ScaleFactor:
    """Build a scale factor: inflation, radiation, matter, empty, sphere, custom."""
    if family == "inflation":
        return ScaleFactor("inflation", lambda i, t: H**i * math.exp(H * t))
    if family == "radiation":
        return ScaleFactor(
            "radiation",
            lambda i, t: math.sqrt(2 * H) * _falling(0.5, i) * t ** (0.5 - i),
        )
    if family == "matter":
        base = (1.5 * H) ** (2.0 / 3.0)
        return ScaleFactor(
            "matter", lambda i, t: base * _falling(2.0 / 3.0, i) * t ** (2.0 / 3.0 - i)
        )
    if family == "empty":
        return ScaleFactor(
            "empty", lambda i, t: H * t if i == 0 else (H if i == 1 else 0.0)
        )
    if family == "sphere":
        def sphere_deriv(i: int, t: float) -> float:
            return (math.sin, math.cos, lambda x: -math.sin(x), lambda x: -math.cos(x))[
                i % 4
            ](t)

        return ScaleFactor("sphere", sphere_deriv)
    if family == "custom":
        if fn is None:
            raise ValueError("custom family needs a derivative callback")
        return ScaleFactor("custom", fn)
    raise ValueError(f"unknown scale-factor family {family!r}")


FAMILIES = ("inflation", "radiation", "matter", "empty", "sphere", "custom")


def heat_trace_series(
    max_m: int, factor: ScaleFactor, t: float
) -> list[tuple[int, float]]:
    """Pointwise heat-trace coefficients [(2M-4, a_{2M}(t))] for M <= max_m.

    Time integration (and any cutoff regularization it may need) is left to
    the caller.
    """
    out = []
    for M in range(0, max_m + 1):
        value = eval_numeric(a2M(M), lambda i: factor.deriv(i, t))
        out.append((2 * M - 4, value))
    return out


# ----------------------------------------------------------------------
# rescaling (constant conformal factor on the spatial sections)
# ----------------------------------------------------------------------

def rescale_uv(U, V, a):
    """Map (U, V) -> (a^-2 U, a^-1 V) for a constant spatial rescaling a > 0."""
    if a <= 0:
        raise ValueError("rescaling factor must be positive")
    if isinstance(a, (int, Fraction)) and not isinstance(a, bool):
        a = Fraction(a)
        return (U / a**2, V / a)
    return (U / a**2, V / a)


def term_scaling_exponent(term: MomentTerm) -> Fraction:
    """Exponent e with term -> a^e term under B -> a^-2 B, A' -> a^-1 A'.

    Every B-symbol (including the half-power block) came from a u-factor and
    every A-symbol from a v-factor, so e = -(b_half + 2*sum b_exp + sum a_exp).
    """
    mono = term.sym
    return -Fraction(
        mono.b_half
        + 2 * sum(e for _, e in mono.b_exp)
        + sum(e for _, e in mono.a_exp)
    )


def verify_uv_scaling(r: Fraction | int, m: int, M: int) -> bool:
    """Check C^(r,m)_M -> a^(-2r-m) C^(r,m)_M termwise (exact, symbolic)."""
    expected = -(2 * Fraction(r) + m)
    return all(
        term_scaling_exponent(t) == expected for t in crm_direct(r, m, M)
    )
