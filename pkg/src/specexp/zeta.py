"""Riemann zeta on C, fractal-string zeta functions, and the S^4 Dirac zeta.

The numeric Riemann zeta is an Euler-Maclaurin evaluation carried out in
mpmath arbitrary-precision arithmetic (depth auto-selected from |Im s|, the
reflection formula for Re s < 1/2), so values keep ~1e-12 relative accuracy
even near zeros.  Exact values at integers are returned as structured
``ExactToken`` objects: products rational * pi^k * zeta(odd)^(+-1).

Fractal strings describe the multiset of radii of a packing.  Three variants:
the Ford-circle string (closed form 2^-s zeta(2s-1)/zeta(2s)), truncated
explicit radius lists, and user-supplied analytic descriptors with a pole
table.  ``string_poles`` returns the poles in a strip; for the Ford string
these are s=1, the negative integers (trivial zeros of zeta(2s)) and half the
nontrivial zeros, whose ordinates ship as a data file and are re-verified by
Hardy-Z sign bracketing when the table is first used.

Evaluators are pure; the zero table is immutable after load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Sequence

import mpmath as mp
import numpy as np

__all__ = [
    "PoleError",
    "ExactToken",
    "bernoulli_number",
    "riemann_zeta",
    "zeta_exact",
    "zeta_derivative",
    "ford_zeta",
    "ford_zeta_exact",
    "FordString",
    "TruncatedString",
    "AnalyticString",
    "PoleTerm",
    "string_zeta",
    "string_poles",
    "dirac_zeta_s4",
    "dirac_zeta_s4_exact",
    "euler_totient_sieve",
    "ford_prefix_string",
    "zero_ordinates",
]


class PoleError(ValueError):
    """Evaluation requested at (or too close to) a pole or a zero denominator."""


# ----------------------------------------------------------------------
# Bernoulli numbers (exact)
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, via the standard recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    total = Fraction(0)
    from math import comb

    for k in range(n):
        total += comb(n + 1, k) * bernoulli_number(k)
    return -total / (n + 1)


# ----------------------------------------------------------------------
# exact value tokens
# ----------------------------------------------------------------------

def _cancel(num: tuple[int, ...], den: tuple[int, ...]):
    ln, ld = list(num), []
    for d in den:
        if d in ln:
            ln.remove(d)
        else:
            ld.append(d)
    return tuple(sorted(ln)), tuple(sorted(ld))


@dataclass(frozen=True)
class ExactToken:
    """Structured exact value: rat * pi^pi_pow * prod zeta(n)/prod zeta(m).

    The zeta arguments are odd integers >= 3 (values not expressible through
    powers of pi).  Tokens multiply, divide and compare structurally.
    """

    rat: Fraction
    pi_pow: int = 0
    zeta_num: tuple[int, ...] = ()
    zeta_den: tuple[int, ...] = ()

    def __post_init__(self):
        num, den = _cancel(tuple(sorted(self.zeta_num)), tuple(sorted(self.zeta_den)))
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "zeta_num", num if self.rat else ())
        object.__setattr__(self, "zeta_den", den if self.rat else ())
        if not self.rat:
            object.__setattr__(self, "pi_pow", 0)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactToken(self.rat * other, self.pi_pow, self.zeta_num, self.zeta_den)
        return ExactToken(
            self.rat * other.rat,
            self.pi_pow + other.pi_pow,
            self.zeta_num + other.zeta_num,
            self.zeta_den + other.zeta_den,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactToken(self.rat / other, self.pi_pow, self.zeta_num, self.zeta_den)
        if other.rat == 0:
            raise ZeroDivisionError("division by zero token")
        return ExactToken(
            self.rat / other.rat,
            self.pi_pow - other.pi_pow,
            self.zeta_num + other.zeta_den,
            self.zeta_den + other.zeta_num,
        )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactToken(Fraction(other))
        if self.rat == 0:
            return other
        if other.rat == 0:
            return self
        if (self.pi_pow, self.zeta_num, self.zeta_den) != (
            other.pi_pow,
            other.zeta_num,
            other.zeta_den,
        ):
            raise ValueError("cannot add tokens with different transcendental parts")
        return ExactToken(self.rat + other.rat, self.pi_pow, self.zeta_num, self.zeta_den)

    def __sub__(self, other):
        return self + (other * Fraction(-1))

    def __neg__(self):
        return self * Fraction(-1)

    def __float__(self):
        val = float(self.rat) * float(mp.pi) ** self.pi_pow
        for n in self.zeta_num:
            val *= float(mp.zeta(n))
        for n in self.zeta_den:
            val /= float(mp.zeta(n))
        return val

    def __str__(self):
        if self.rat == 0:
            return "0"
        num_parts = []
        den_parts = []
        if self.rat.numerator != 1 or (
            self.pi_pow <= 0 and not self.zeta_num
        ):
            num_parts.append(str(self.rat.numerator))
        if self.pi_pow > 0:
            num_parts.append(f"pi^{self.pi_pow}" if self.pi_pow != 1 else "pi")
        for n in self.zeta_num:
            num_parts.append(f"zeta({n})")
        if self.rat.denominator != 1:
            den_parts.append(str(self.rat.denominator))
        if self.pi_pow < 0:
            den_parts.append(f"pi^{-self.pi_pow}" if self.pi_pow != -1 else "pi")
        for n in self.zeta_den:
            den_parts.append(f"zeta({n})")
        num = "*".join(num_parts) if num_parts else "1"
        if not den_parts:
            return num
        den = "*".join(den_parts)
        return f"{num}/({den})" if len(den_parts) > 1 else f"{num}/{den}"

    __repr__ = __str__


# ----------------------------------------------------------------------
# Riemann zeta: Euler-Maclaurin in arbitrary precision
# ----------------------------------------------------------------------

def _zeta_em(s: mp.mpc, N: int, K: int) -> mp.mpc:
    """Euler-Maclaurin tail formula with N initial terms and K corrections."""
    total = mp.mpc(0)
    for n in range(1, N):
        total += mp.power(n, -s)
    total += mp.power(N, 1 - s) / (s - 1)
    total += mp.power(N, -s) / 2
    rising = mp.mpc(1)
    for k in range(1, K + 1):
        # B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k)
        b = bernoulli_number(2 * k)
        lo, hi = 2 * k - 3, 2 * k - 2
        if k == 1:
            rising = s
        else:
            rising = rising * (s + lo) * (s + hi)
        coeff = mp.mpf(b.numerator) / b.denominator
        from math import factorial

        total += coeff / factorial(2 * k) * rising * mp.power(N, 1 - s - 2 * k)
    return total


def _riemann_zeta_mp(s, dps: int = 30, terms=None, corrections: int = 25) -> mp.mpc:
    s = mp.mpc(s)
    if mp.almosteq(s, 1, abs_eps=1e-300):
        raise PoleError("zeta has a pole at s = 1")
    with mp.workdps(dps + 10):
        # Euler-Maclaurin handles any s != 1 with Re s bounded below; reflect
        # only deep in the left half-plane (then 1-s never lands on the pole).
        if mp.re(s) < -0.5:
            # reflection: zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
            chi = (
                mp.power(2, s)
                * mp.power(mp.pi, s - 1)
                * mp.sin(mp.pi * s / 2)
                * mp.gamma(1 - s)
            )
            return chi * _riemann_zeta_mp(1 - s, dps, terms, corrections)
        N = terms if terms is not None else max(30, int(1.5 * abs(mp.im(s))) + 10)
        return _zeta_em(s, N, corrections)


def riemann_zeta(s: complex, *, terms: int | None = None, corrections: int = 25) -> complex:
    """Riemann zeta; relative error <= 1e-12 for |Im s| <= 50, Re s in [-20, 40].

    The Euler-Maclaurin depth is auto-selected from |Im s|; ``terms`` (initial
    sum length) and ``corrections`` (number of Bernoulli corrections) override
    it when explicit control is wanted.
    """
    return complex(_riemann_zeta_mp(s, terms=terms, corrections=corrections))


def zeta_exact(n: int) -> ExactToken:
    """Exact zeta value at an integer: rational, rational*pi^2n, or zeta(odd)."""
    if n == 1:
        raise PoleError("zeta has a pole at s = 1")
    if n <= 0:
        # zeta(0) = -1/2, zeta(-k) = -B_{k+1}/(k+1)
        if n == 0:
            return ExactToken(Fraction(-1, 2))
        return ExactToken(-bernoulli_number(-n + 1) / (-n + 1))
    if n % 2 == 0:
        from math import factorial

        k = n // 2
        rat = (
            Fraction((-1) ** (k + 1))
            * bernoulli_number(n)
            * Fraction(2) ** (n - 1)
            / factorial(n)
        )
        return ExactToken(rat, pi_pow=n)
    return ExactToken(Fraction(1), zeta_num=(n,))


def zeta_derivative(s: complex, h: float = 1e-8, dps: int = 40) -> complex:
    """Central-difference zeta'(s) at high working precision."""
    with mp.workdps(dps):
        hh = mp.mpf(h)
        return complex(
            (_riemann_zeta_mp(mp.mpc(s) + hh, dps) - _riemann_zeta_mp(mp.mpc(s) - hh, dps))
            / (2 * hh)
        )


# ----------------------------------------------------------------------
# fractal strings
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoleTerm:
    sigma: complex
    residue: complex
    exact: ExactToken | None = None


class FordString:
    """Radii of the Ford circle packing: radius 1/(2n^2) with multiplicity phi(n)."""

    variant = "ford"

    def zeta(self, s: complex) -> complex:
        return ford_zeta(s)

    def __repr__(self):
        return "FordString()"


class TruncatedString:
    """Finite explicit list of (radius, multiplicity); its zeta is entire."""

    variant = "truncated"

    def __init__(self, pairs: Sequence[tuple]):
        pairs = [(r, int(m)) for r, m in pairs]
        for r, m in pairs:
            if (isinstance(r, (int, Fraction)) and r <= 0) or (
                isinstance(r, float) and r <= 0.0
            ):
                raise ValueError("radii must be strictly positive")
            if m < 1:
                raise ValueError("multiplicities must be positive integers")
        self.pairs = pairs
        self._arrays = None

    @classmethod
    def from_arrays(cls, radii: np.ndarray, mults: np.ndarray) -> "TruncatedString":
        obj = cls.__new__(cls)
        obj.pairs = None
        if np.any(radii <= 0):
            raise ValueError("radii must be strictly positive")
        obj._arrays = (np.asarray(radii, dtype=float), np.asarray(mults, dtype=float))
        return obj

    def zeta(self, s):
        """Finite Dirichlet sum; exact Fraction for rational radii and integer s."""
        if self._arrays is not None:
            radii, mults = self._arrays
            if isinstance(s, complex) and s.imag != 0:
                return complex(np.sum(mults * np.exp(s * np.log(radii))))
            return float(np.sum(mults * radii ** float(np.real(s))))
        exact = isinstance(s, (int, Fraction)) or (
            isinstance(s, float) and float(s).is_integer()
        )
        if exact and all(isinstance(r, (int, Fraction)) for r, _ in self.pairs):
            si = int(s)
            return sum(
                (Fraction(r) ** si * m for r, m in self.pairs), Fraction(0)
            )
        total = 0j
        for r, m in self.pairs:
            total += m * complex(r) ** complex(s)
        return total if total.imag else total.real

    def __repr__(self):
        if self._arrays is not None:
            return f"TruncatedString(<{len(self._arrays[0])} radii>)"
        return f"TruncatedString({self.pairs!r})"


class AnalyticString:
    """User-supplied zeta evaluator with a table of simple poles."""

    variant = "analytic"

    def __init__(self, evaluator: Callable[[complex], complex], poles: Sequence[PoleTerm]):
        sigmas = [p.sigma for p in poles]
        if len({(round(s.real, 12), round(s.imag, 12)) for s in map(complex, sigmas)}) != len(sigmas):
            raise ValueError("pole locations must be distinct")
        if any(p.residue == 0 for p in poles):
            raise ValueError("residues must be nonzero")
        self.evaluator = evaluator
        self.pole_table = tuple(poles)

    def zeta(self, s: complex) -> complex:
        return self.evaluator(s)

    def __repr__(self):
        return f"AnalyticString(<{len(self.pole_table)} poles>)"


FractalString = FordString | TruncatedString | AnalyticString


def ford_zeta(s: complex) -> complex:
    """Closed form 2^-s zeta(2s-1)/zeta(2s) for the Ford circle string."""
    s = complex(s)
    if abs(s - 1) < 1e-12:
        raise PoleError("Ford string zeta has a pole at s = 1")
    num = riemann_zeta(2 * s - 1)
    den = riemann_zeta(2 * s)
    if abs(den) < 1e-12:
        raise PoleError(f"zeta(2s) vanishes at s = {s}")
    return 2 ** (-s) * num / den


def ford_zeta_exact(n: int) -> ExactToken:
    """Exact token for the Ford string zeta at an integer (n = 0 or n >= 2)."""
    if n == 1:
        raise PoleError("pole at s = 1")
    if n < 0:
        raise PoleError("pole at negative integers (trivial zeros of zeta(2s))")
    num = zeta_exact(2 * n - 1)
    den = zeta_exact(2 * n)
    if den.rat == 0:
        raise PoleError(f"zeta({2 * n}) = 0")
    return ExactToken(Fraction(1, 2 ** n)) * num / den


def string_zeta(string: FractalString, s):
    """Dispatch the string zeta: closed form, finite sum, or user evaluator."""
    return string.zeta(s)


# -- zero ordinate table -------------------------------------------------

_ZERO_CACHE: list[float] | None = None


def _hardy_z(t: float, dps: int = 30) -> float:
    """Hardy Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t."""
    with mp.workdps(dps):
        tt = mp.mpf(t)
        theta = mp.im(mp.loggamma(mp.mpf(1) / 4 + 1j * tt / 2)) - tt / 2 * mp.log(mp.pi)
        val = mp.exp(1j * theta) * _riemann_zeta_mp(mp.mpc(0.5, t), dps)
        return float(mp.re(val))


def zero_ordinates(verify: bool = True) -> tuple[float, ...]:
    """Bundled ordinates of the first 25 nontrivial zeros (Im part, > 0).

    On first use each ordinate is checked by a Hardy-Z sign change across a
    small bracket; a failed bracket raises, protecting downstream pole tables
    from a corrupted data file.
    """
    global _ZERO_CACHE
    if _ZERO_CACHE is None:
        raw = resources.files("specexp").joinpath("data/zeta_zeros.txt").read_text()
        ordinates = [float(line) for line in raw.split() if line.strip()]
        if verify:
            for g in ordinates:
                lo, hi = _hardy_z(g - 0.05), _hardy_z(g + 0.05)
                if not (lo == 0 or hi == 0 or (lo < 0) != (hi < 0)):
                    raise RuntimeError(f"zero ordinate {g} failed sign bracketing")
        _ZERO_CACHE = ordinates
    return tuple(_ZERO_CACHE)


def _in_strip(sigma: complex, strip) -> bool:
    (re_min, re_max), (im_min, im_max) = strip
    return re_min <= sigma.real <= re_max and im_min <= sigma.imag <= im_max


def string_poles(string: FractalString, strip=None) -> list[PoleTerm]:
    """Poles of the string zeta inside the strip ((reMin,reMax),(imMin,imMax)).

    Ford: {1} with residue 3/(2 pi^2), the negative integers (from the trivial
    zeros of zeta(2s)), and rho/2 over the bundled nontrivial zeros rho, with
    residues computed from the derivative of zeta(2s).  Truncated strings are
    entire; analytic descriptors return their stored table filtered to the strip.
    """
    if strip is None:
        strip = ((-12.0, 6.0), (-50.0, 50.0))
    if isinstance(string, TruncatedString):
        return []
    if isinstance(string, AnalyticString):
        return [p for p in string.pole_table if _in_strip(complex(p.sigma), strip)]
    if not isinstance(string, FordString):
        raise TypeError(f"unknown string type {type(string).__name__}")
    poles: list[PoleTerm] = []
    # s = 1: residue of 2^-s zeta(2s-1)/zeta(2s); zeta(2s-1) ~ 1/(2(s-1))
    if _in_strip(1 + 0j, strip):
        res = ExactToken(Fraction(3, 2), pi_pow=-2)
        poles.append(PoleTerm(1 + 0j, float(res), res))
    # s = -k: simple zeros of zeta(2s) at the trivial zeros -2k
    k = 1
    while -k >= strip[0][0] - 1e-9:
        if _in_strip(complex(-k, 0.0), strip):
            num = 2**k * complex(riemann_zeta(-2 * k - 1))
            res = num / (2 * zeta_derivative(-2 * k))
            poles.append(PoleTerm(complex(-k, 0.0), res))
        k += 1
    # s = rho/2 over nontrivial zeros rho = 1/2 + i gamma (and conjugates)
    for gamma in zero_ordinates():
        for sgn in (1, -1):
            sigma = complex(0.25, sgn * gamma / 2)
            if not _in_strip(sigma, strip):
                continue
            rho = 2 * sigma
            res = 2 ** (-sigma) * riemann_zeta(rho - 1) / (2 * zeta_derivative(rho))
            poles.append(PoleTerm(sigma, res))
    poles.sort(key=lambda p: (p.sigma.real, p.sigma.imag))
    return poles


# ----------------------------------------------------------------------
# Dirac zeta on the round S^4
# ----------------------------------------------------------------------

def dirac_zeta_s4(s: complex, r: float = 1.0) -> complex:
    """zeta of |D| on the radius-r round S^4: (4/3) r^s (zeta(s-3) - zeta(s-1))."""
    if r <= 0:
        raise ValueError("radius must be positive")
    s = complex(s)
    for pole in (4.0, 2.0):
        if abs(s - pole) < 1e-12:
            raise PoleError(f"Dirac zeta has a pole at s = {int(pole)}")
    return (4.0 / 3.0) * r**s * (riemann_zeta(s - 3) - riemann_zeta(s - 1))


def dirac_zeta_s4_exact(s: int) -> ExactToken:
    """Exact rational token of the unit-S^4 Dirac zeta at an integer s <= 1."""
    if s in (2, 4):
        raise PoleError(f"Dirac zeta has a pole at s = {s}")
    if s > 1:
        raise ValueError("exact form kept to s <= 1 (pure rational values)")
    val = (zeta_exact(s - 3) - zeta_exact(s - 1)) * Fraction(4, 3)
    return val


# ----------------------------------------------------------------------
# Ford- prefix helper (totient multiplicities)
# ----------------------------------------------------------------------

def euler_totient_sieve(n_max: int) -> np.ndarray:
    """phi(0..n_max) as an int64 array (phi[0] = 0)."""
    phi = np.arange(n_max + 1, dtype=np.int64)
    for p in range(2, n_max + 1):
        if phi[p] == p:  # p prime
            phi[p::p] -= phi[p::p] // p
    return phi


def ford_prefix_string(n_max: int) -> TruncatedString:
    """Truncated Ford string: radii 1/(2n^2), multiplicities phi(n), n <= n_max."""
    phi = euler_totient_sieve(n_max)
    n = np.arange(1, n_max + 1, dtype=float)
    return TruncatedString.from_arrays(1.0 / (2.0 * n**2), phi[1:].astype(float))


# ----------------------------------------------------------------------
# JSON descriptors
# ----------------------------------------------------------------------

def string_from_json(obj: dict) -> FractalString:
    """Load a string descriptor {variant, radii: [[r, mult]...], poles: [...]}."""
    variant = obj.get("variant", "").lower()
    if variant == "ford":
        return FordString()
    if variant == "truncated":
        pairs = []
        for r, m in obj["radii"]:
            if isinstance(r, str):
                r = Fraction(r)
            pairs.append((r, int(m)))
        return TruncatedString(pairs)
    if variant == "analytic":
        poles = [
            PoleTerm(complex(re, im), complex(rre, rim))
            for re, im, rre, rim in obj.get("poles", [])
        ]
        radii = obj.get("radii", [])
        inner = TruncatedString([(r, int(m)) for r, m in radii]) if radii else None

        def evaluator(s, _inner=inner):
            if _inner is None:
                raise ValueError("analytic descriptor has no evaluator data")
            return _inner.zeta(s)

        return AnalyticString(evaluator, poles)
    raise ValueError(f"unknown string variant {obj.get('variant')!r}")


def load_string(path: str) -> FractalString:
    with open(path) as f:
        return string_from_json(json.load(f))
