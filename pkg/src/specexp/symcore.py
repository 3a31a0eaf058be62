"""Exact scalars over Q(sqrt2) and canonical polynomials in scale-factor derivatives.

Two polynomial carriers live here.  ``SymPoly`` works in the variables
A(t) = 1/a(t) and B(t) = A(t)^2 together with their derivatives A^(i), B^(i),
allowing half-integer powers of B (stored in half units).  ``AFormPoly`` works
directly in the scale factor a(t) and its derivatives, with a single signed
power of a per monomial.  Both are canonical maps monomial -> coefficient, so
structural equality is mathematical equality.

All values are immutable after construction and every operation is a pure
function; instances can be shared freely between threads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

__all__ = [
    "ExactScalar",
    "DerivMonomial",
    "SymPoly",
    "AFormPoly",
    "add",
    "mul",
    "scale",
    "differentiate",
    "to_a_form",
    "eval_numeric",
    "sympoly_to_text",
    "sympoly_to_latex",
    "sympoly_to_json",
    "sympoly_from_json",
    "aform_to_text",
    "aform_to_latex",
    "aform_to_json",
    "aform_from_json",
]

RationalLike = int | Fraction


class ExactScalar:
    """Element rat0 + rat1*sqrt(2) of Q(sqrt2), both parts in lowest terms."""

    __slots__ = ("rat0", "rat1", "_hash")

    def __init__(self, rat0: RationalLike = 0, rat1: RationalLike = 0):
        object.__setattr__(self, "rat0", Fraction(rat0))
        object.__setattr__(self, "rat1", Fraction(rat1))
        object.__setattr__(self, "_hash", hash((self.rat0, self.rat1)))

    def __setattr__(self, *_):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_rational(q: RationalLike) -> "ExactScalar":
        return ExactScalar(q, 0)

    @staticmethod
    def sqrt2_power(n: int) -> "ExactScalar":
        """Exact 2^(n/2) for integer n (possibly negative)."""
        if n % 2 == 0:
            return ExactScalar(Fraction(2) ** (n // 2), 0)
        return ExactScalar(0, Fraction(2) ** ((n - 1) // 2))

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.rat0 and not self.rat1

    def is_rational(self) -> bool:
        return not self.rat1

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return ExactScalar(self.rat0 + other.rat0, self.rat1 + other.rat1)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.rat0, -self.rat1)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        return ExactScalar(
            self.rat0 * other.rat0 + 2 * self.rat1 * other.rat1,
            self.rat0 * other.rat1 + self.rat1 * other.rat0,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        # 1/(p + q sqrt2) = (p - q sqrt2) / (p^2 - 2 q^2); the norm is nonzero
        # for nonzero elements since sqrt2 is irrational.
        norm = self.rat0 * self.rat0 - 2 * self.rat1 * self.rat1
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return ExactScalar(self.rat0 / norm, -self.rat1 / norm)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactScalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / misc --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rat1 == 0 and self.rat0 == other
        if isinstance(other, ExactScalar):
            return self.rat0 == other.rat0 and self.rat1 == other.rat1
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __float__(self):
        return float(self.rat0) + float(self.rat1) * 1.4142135623730951

    def __repr__(self):
        if self.rat1 == 0:
            return f"ExactScalar({self.rat0})"
        return f"ExactScalar({self.rat0}, {self.rat1})"

    def __str__(self):
        if self.rat1 == 0:
            return str(self.rat0)
        if self.rat0 == 0:
            return f"{self.rat1}*sqrt2"
        return f"({self.rat0}+{self.rat1}*sqrt2)"


def _coerce(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(x, 0)
    raise TypeError(f"cannot coerce {type(x).__name__} into ExactScalar")


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
SQRT2 = ExactScalar(0, 1)


def _normalize_exp(exp) -> tuple[tuple[int, int], ...]:
    """Sparse exponent map as a sorted tuple of (index, exponent), no zeros."""
    if isinstance(exp, Mapping):
        items = exp.items()
    else:
        items = exp
    merged: dict[int, int] = {}
    for i, e in items:
        if i < 1:
            raise ValueError("derivative index must be >= 1")
        merged[i] = merged.get(i, 0) + e
    return tuple(sorted((i, e) for i, e in merged.items() if e != 0))


class DerivMonomial:
    """B^(b_half/2) * prod A^(i)^a_i * prod B^(i)^b_i, exponents sparse."""

    __slots__ = ("b_half", "a_exp", "b_exp", "_hash")

    def __init__(self, b_half: int = 0, a_exp=(), b_exp=()):
        object.__setattr__(self, "b_half", int(b_half))
        object.__setattr__(self, "a_exp", _normalize_exp(a_exp))
        object.__setattr__(self, "b_exp", _normalize_exp(b_exp))
        object.__setattr__(self, "_hash", hash((self.b_half, self.a_exp, self.b_exp)))

    def __setattr__(self, *_):
        raise AttributeError("DerivMonomial is immutable")

    def weight(self) -> int:
        """Total derivative order sum(i * exponent) over both symbol families."""
        return sum(i * e for i, e in self.a_exp) + sum(i * e for i, e in self.b_exp)

    def sort_key(self):
        return (self.b_half, self.a_exp, self.b_exp)

    def __mul__(self, other: "DerivMonomial") -> "DerivMonomial":
        return DerivMonomial(
            self.b_half + other.b_half,
            self.a_exp + other.a_exp,
            self.b_exp + other.b_exp,
        )

    def __eq__(self, other):
        return (
            isinstance(other, DerivMonomial)
            and self.b_half == other.b_half
            and self.a_exp == other.a_exp
            and self.b_exp == other.b_exp
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DerivMonomial({self.b_half}, {self.a_exp}, {self.b_exp})"


_MONOMIAL_ONE = DerivMonomial(0)


class SymPoly:
    """Canonical map DerivMonomial -> ExactScalar with no zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[DerivMonomial, ExactScalar] | None = None):
        clean: dict[DerivMonomial, ExactScalar] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _coerce(coeff)
                if mono in clean:
                    coeff = clean[mono] + coeff
                if coeff.is_zero():
                    clean.pop(mono, None)
                else:
                    clean[mono] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("SymPoly is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "SymPoly":
        return SymPoly()

    @staticmethod
    def constant(c) -> "SymPoly":
        c = _coerce(c)
        return SymPoly({} if c.is_zero() else {_MONOMIAL_ONE: c})

    @staticmethod
    def b_power(half_units: int, coeff=1) -> "SymPoly":
        """B(t)^(half_units/2) with an optional coefficient."""
        return SymPoly({DerivMonomial(half_units): _coerce(coeff)})

    @staticmethod
    def a_deriv(i: int) -> "SymPoly":
        return SymPoly({DerivMonomial(0, ((i, 1),)): ONE})

    @staticmethod
    def b_deriv(i: int) -> "SymPoly":
        return SymPoly({DerivMonomial(0, (), ((i, 1),)): ONE})

    @staticmethod
    def monomial(mono: DerivMonomial, coeff=1) -> "SymPoly":
        c = _coerce(coeff)
        return SymPoly({} if c.is_zero() else {mono: c})

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "SymPoly") -> "SymPoly":
        if not isinstance(other, SymPoly):
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, ZERO) + coeff
            if acc.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = acc
        poly = SymPoly.__new__(SymPoly)
        object.__setattr__(poly, "terms", out)
        return poly

    def __neg__(self) -> "SymPoly":
        poly = SymPoly.__new__(SymPoly)
        object.__setattr__(poly, "terms", {m: -c for m, c in self.terms.items()})
        return poly

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def __mul__(self, other) -> "SymPoly":
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self.scale(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        out: dict[DerivMonomial, ExactScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1 * m2
                acc = out.get(mono, ZERO) + c1 * c2
                if acc.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = acc
        poly = SymPoly.__new__(SymPoly)
        object.__setattr__(poly, "terms", out)
        return poly

    __rmul__ = __mul__

    def scale(self, c) -> "SymPoly":
        c = _coerce(c)
        if c.is_zero():
            return SymPoly.zero()
        poly = SymPoly.__new__(SymPoly)
        object.__setattr__(poly, "terms", {m: k * c for m, k in self.terms.items()})
        return poly

    def __pow__(self, n: int) -> "SymPoly":
        if n < 0:
            raise ValueError("SymPoly powers must be non-negative")
        out = SymPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[DerivMonomial, ExactScalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def all_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def __eq__(self, other):
        return isinstance(other, SymPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.sorted_terms()))

    def __repr__(self):
        return f"SymPoly({sympoly_to_text(self)!r})"


# ----------------------------------------------------------------------
# module-level operation names used throughout the package
# ----------------------------------------------------------------------

def add(p: SymPoly, q: SymPoly) -> SymPoly:
    return p + q


def mul(p: SymPoly, q: SymPoly) -> SymPoly:
    return p * q


def scale(p: SymPoly, c) -> SymPoly:
    return p.scale(c)


def differentiate(p: SymPoly) -> SymPoly:
    """d/dt with A^(i) -> A^(i+1), B^(i) -> B^(i+1), B^(k/2) -> (k/2)B^(k/2-1)B'."""
    out: dict[DerivMonomial, ExactScalar] = {}

    def _accumulate(mono: DerivMonomial, coeff: ExactScalar):
        if coeff.is_zero():
            return
        acc = out.get(mono, ZERO) + coeff
        if acc.is_zero():
            out.pop(mono, None)
        else:
            out[mono] = acc

    for mono, coeff in p.terms.items():
        if mono.b_half:
            factor = coeff * Fraction(mono.b_half, 2)
            _accumulate(
                DerivMonomial(mono.b_half - 2, mono.a_exp, mono.b_exp + ((1, 1),)),
                factor,
            )
        for i, e in mono.a_exp:
            _accumulate(
                DerivMonomial(
                    mono.b_half,
                    mono.a_exp + ((i, -1), (i + 1, 1)),
                    mono.b_exp,
                ),
                coeff * e,
            )
        for i, e in mono.b_exp:
            _accumulate(
                DerivMonomial(
                    mono.b_half,
                    mono.a_exp,
                    mono.b_exp + ((i, -1), (i + 1, 1)),
                ),
                coeff * e,
            )
    poly = SymPoly.__new__(SymPoly)
    object.__setattr__(poly, "terms", out)
    return poly


# ----------------------------------------------------------------------
# a-form polynomials
# ----------------------------------------------------------------------

class AFormPoly:
    """Polynomial in a(t) and its derivatives with rational coefficients.

    Monomials are pairs (a_pow, deriv_exp) where a_pow is a signed integer
    exponent of a(t) and deriv_exp is a sparse map i -> exponent of a^(i)(t).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, tuple], Fraction] | None = None):
        clean: dict[tuple[int, tuple[tuple[int, int], ...]], Fraction] = {}
        if terms:
            for (a_pow, dexp), coeff in terms.items():
                key = (int(a_pow), _normalize_exp(dexp))
                acc = clean.get(key, Fraction(0)) + Fraction(coeff)
                if acc == 0:
                    clean.pop(key, None)
                else:
                    clean[key] = acc
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("AFormPoly is immutable")

    @staticmethod
    def zero() -> "AFormPoly":
        return AFormPoly()

    @staticmethod
    def constant(c) -> "AFormPoly":
        c = Fraction(c)
        return AFormPoly({(0, ()): c} if c else {})

    @staticmethod
    def a_power(n: int, coeff=1) -> "AFormPoly":
        return AFormPoly({(n, ()): Fraction(coeff)})

    @staticmethod
    def deriv(i: int, coeff=1) -> "AFormPoly":
        return AFormPoly({(0, ((i, 1),)): Fraction(coeff)})

    def __add__(self, other: "AFormPoly") -> "AFormPoly":
        if not isinstance(other, AFormPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key, Fraction(0)) + coeff
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
        poly = AFormPoly.__new__(AFormPoly)
        object.__setattr__(poly, "terms", out)
        return poly

    def __neg__(self):
        poly = AFormPoly.__new__(AFormPoly)
        object.__setattr__(poly, "terms", {k: -c for k, c in self.terms.items()})
        return poly

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return AFormPoly.zero()
            poly = AFormPoly.__new__(AFormPoly)
            object.__setattr__(
                poly, "terms", {k: c * other for k, c in self.terms.items()}
            )
            return poly
        if not isinstance(other, AFormPoly):
            return NotImplemented
        out: dict[tuple[int, tuple], Fraction] = {}
        for (p1, d1), c1 in self.terms.items():
            for (p2, d2), c2 in other.terms.items():
                key = (p1 + p2, _normalize_exp(d1 + d2))
                acc = out.get(key, Fraction(0)) + c1 * c2
                if acc == 0:
                    out.pop(key, None)
                else:
                    out[key] = acc
        poly = AFormPoly.__new__(AFormPoly)
        object.__setattr__(poly, "terms", out)
        return poly

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "AFormPoly":
        if n < 0:
            raise ValueError("AFormPoly powers must be non-negative")
        out = AFormPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def differentiate(self) -> "AFormPoly":
        """Formal d/dt: a -> a^(1), a^(i) -> a^(i+1)."""
        out = AFormPoly.zero()
        for (a_pow, dexp), coeff in self.terms.items():
            if a_pow:
                out = out + AFormPoly(
                    {(a_pow - 1, _normalize_exp(dexp + ((1, 1),))): coeff * a_pow}
                )
            for i, e in dexp:
                out = out + AFormPoly(
                    {
                        (a_pow, _normalize_exp(dexp + ((i, -1), (i + 1, 1)))): coeff
                        * e
                    }
                )
        return out

    def eval(self, derivs: Callable[[int], float]) -> float:
        """Numeric evaluation; derivs(i) must return a^(i)(t), derivs(0) = a(t)."""
        a0 = derivs(0)
        total = 0.0
        for (a_pow, dexp), coeff in self.terms.items():
            if a_pow < 0 and a0 == 0.0:
                raise ZeroDivisionError("a(t) = 0 at the evaluation point")
            val = float(coeff) * (a0 ** a_pow if a_pow >= 0 else (1.0 / a0) ** (-a_pow))
            for i, e in dexp:
                val *= derivs(i) ** e
            total += val
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __eq__(self, other):
        return isinstance(other, AFormPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.sorted_terms()))

    def __repr__(self):
        return f"AFormPoly({aform_to_text(self)!r})"


# ----------------------------------------------------------------------
# substitution A = 1/a
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _a_deriv_expansion(k: int) -> AFormPoly:
    """a-form of A^(k) = d^k/dt^k (1/a), via derivatives of composite functions."""
    from . import bell  # local import: bell is carrier-generic, no cycle

    if k == 0:
        return AFormPoly.a_power(-1)
    # f(y) = 1/y evaluated at y = a: f^(m)(a) = (-1)^m m! a^(-m-1)
    f_derivs = []
    fact = 1
    for m in range(1, k + 1):
        fact *= m
        f_derivs.append(AFormPoly.a_power(-m - 1, Fraction((-1) ** m * fact)))
    g_derivs = [AFormPoly.deriv(i) for i in range(1, k + 1)]
    return bell.faa_di_bruno(k, f_derivs, g_derivs, one=AFormPoly.constant(1))


@lru_cache(maxsize=None)
def _b_deriv_expansion(k: int) -> AFormPoly:
    """a-form of B^(k) = d^k/dt^k (1/a^2)."""
    from . import bell

    if k == 0:
        return AFormPoly.a_power(-2)
    # f(y) = 1/y^2: f^(m)(a) = (-1)^m (m+1)! a^(-m-2)
    f_derivs = []
    fact = 1
    for m in range(1, k + 1):
        fact *= m + 1
        f_derivs.append(AFormPoly.a_power(-m - 2, Fraction((-1) ** m * fact)))
    g_derivs = [AFormPoly.deriv(i) for i in range(1, k + 1)]
    return bell.faa_di_bruno(k, f_derivs, g_derivs, one=AFormPoly.constant(1))


def to_a_form(p: SymPoly) -> AFormPoly:
    """Substitute A = 1/a, B = 1/a^2 and expand all derivative symbols.

    Requires every coefficient of ``p`` to be plain rational (no sqrt2 part);
    B^(1/2) maps to 1/a so half powers of B are always legal.
    """
    out = AFormPoly.zero()
    for mono, coeff in p.terms.items():
        if not coeff.is_rational():
            raise ValueError("to_a_form needs rational coefficients, got sqrt2 part")
        # B^(b_half/2) -> a^(-b_half)
        term = AFormPoly.a_power(-mono.b_half, coeff.rat0)
        for i, e in mono.a_exp:
            term = term * _a_deriv_expansion(i) ** e
        for i, e in mono.b_exp:
            term = term * _b_deriv_expansion(i) ** e
        out = out + term
    return out


def eval_numeric(p: SymPoly, derivs: Callable[[int], float]) -> float:
    """Float value of ``p`` given a^(i)(t) through the callback (0 = a itself)."""
    return to_a_form(p).eval(derivs)


# ----------------------------------------------------------------------
# rendering and serialization
# ----------------------------------------------------------------------

def _sym_name(base: str, i: int) -> str:
    if i == 1:
        return base + "'"
    if i == 2:
        return base + "''"
    return f"{base}({i})"


def _coeff_text(c: ExactScalar) -> str:
    return str(c)


def sympoly_to_text(p: SymPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono, coeff in p.sorted_terms():
        factors = [_coeff_text(coeff)]
        if mono.b_half:
            if mono.b_half % 2 == 0:
                factors.append(f"B^({mono.b_half // 2})")
            else:
                factors.append(f"B^({mono.b_half}/2)")
        for i, e in mono.a_exp:
            name = _sym_name("A", i)
            factors.append(name if e == 1 else f"{name}^{e}")
        for i, e in mono.b_exp:
            name = _sym_name("B", i)
            factors.append(name if e == 1 else f"{name}^{e}")
        parts.append(" * ".join(factors))
    return "  +  ".join(parts)


def _latex_sym(base: str, i: int, e: int) -> str:
    if i == 1:
        core = f"{base}'(t)"
    elif i == 2:
        core = f"{base}''(t)"
    else:
        core = f"{base}^{{({i})}}(t)"
    return core if e == 1 else f"{core}^{{{e}}}"


def _b_half_latex(half_units: int) -> str:
    exp = str(half_units // 2) if half_units % 2 == 0 else f"{half_units}/2"
    return f"B(t)^{{{exp}}}"


def sympoly_to_latex(p: SymPoly) -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for mono, coeff in p.sorted_terms():
        num_factors = []
        for i, e in mono.a_exp:
            num_factors.append(_latex_sym("A", i, e))
        for i, e in mono.b_exp:
            num_factors.append(_latex_sym("B", i, e))
        if mono.b_half > 0:
            num_factors.append(_b_half_latex(mono.b_half))
        den_sym = _b_half_latex(-mono.b_half) if mono.b_half < 0 else ""
        num = " ".join(num_factors) if num_factors else "1"
        if coeff.is_rational():
            q = coeff.rat0
            sign = "-" if q < 0 else "+"
            q = abs(q)
            num_txt = num if q.numerator == 1 and num != "1" else (str(q.numerator) if num == "1" else f"{q.numerator} {num}")
            den_txt = " ".join(x for x in (str(q.denominator) if q.denominator != 1 else "", den_sym) if x)
        else:
            sign = "+"
            num_txt = f"({coeff}) {num}" if num != "1" else f"({coeff})"
            den_txt = den_sym
        body = f"\\frac{{{num_txt}}}{{{den_txt}}}" if den_txt else num_txt
        chunks.append((sign, body))
    first_sign, first_body = chunks[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


def sympoly_to_json(p: SymPoly) -> dict:
    terms = []
    for mono, coeff in p.sorted_terms():
        terms.append(
            {
                "coeff": {
                    "p": coeff.rat0.numerator,
                    "q": coeff.rat0.denominator,
                    "p2": coeff.rat1.numerator,
                    "q2": coeff.rat1.denominator,
                },
                "bHalf": mono.b_half,
                "a": [[i, e] for i, e in mono.a_exp],
                "b": [[i, e] for i, e in mono.b_exp],
            }
        )
    return {"terms": terms}


def sympoly_from_json(obj: dict) -> SymPoly:
    terms: dict[DerivMonomial, ExactScalar] = {}
    for t in obj["terms"]:
        c = t["coeff"]
        coeff = ExactScalar(
            Fraction(c["p"], c["q"]), Fraction(c.get("p2", 0), c.get("q2", 1))
        )
        mono = DerivMonomial(
            t["bHalf"],
            tuple((int(i), int(e)) for i, e in t.get("a", [])),
            tuple((int(i), int(e)) for i, e in t.get("b", [])),
        )
        terms[mono] = terms.get(mono, ZERO) + coeff
    return SymPoly(terms)


def aform_to_text(p: AFormPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (a_pow, dexp), coeff in p.sorted_terms():
        factors = [str(coeff)]
        if a_pow:
            factors.append(f"a^{a_pow}" if a_pow != 1 else "a")
        for i, e in dexp:
            name = _sym_name("a", i)
            factors.append(name if e == 1 else f"{name}^{e}")
        parts.append(" * ".join(factors))
    return "  +  ".join(parts)


def aform_to_latex(p: AFormPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (a_pow, dexp), coeff in p.sorted_terms():
        factors = []
        if a_pow:
            factors.append(f"a(t)^{{{a_pow}}}" if a_pow != 1 else "a(t)")
        for i, e in dexp:
            factors.append(_latex_sym("a", i, e))
        body = " ".join(factors) if factors else "1"
        if coeff.denominator == 1:
            coeff_tex = str(coeff.numerator)
        else:
            coeff_tex = f"\\frac{{{coeff.numerator}}}{{{coeff.denominator}}}"
        parts.append(f"{coeff_tex} \\, {body}")
    return " + ".join(parts)


def aform_to_json(p: AFormPoly) -> dict:
    terms = []
    for (a_pow, dexp), coeff in p.sorted_terms():
        terms.append(
            {
                "coeff": {"p": coeff.numerator, "q": coeff.denominator},
                "aPow": a_pow,
                "d": [[i, e] for i, e in dexp],
            }
        )
    return {"terms": terms}


def aform_from_json(obj: dict) -> AFormPoly:
    terms: dict[tuple[int, tuple], Fraction] = {}
    for t in obj["terms"]:
        c = t["coeff"]
        key = (int(t["aPow"]), tuple((int(i), int(e)) for i, e in t.get("d", [])))
        terms[key] = terms.get(key, Fraction(0)) + Fraction(c["p"], c["q"])
    return AFormPoly(terms)


def dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)
