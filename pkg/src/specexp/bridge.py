"""Exact Brownian-bridge functionals on the ordered simplex.

The bridge alpha is the Gaussian process on [0,1] with alpha(0)=alpha(1)=0 and
E[alpha(s)alpha(t)] = s(1-t) for s <= t.  Everything here is exact rational
except the Monte Carlo oracle ``mc_estimate`` and the quadrature helpers used
by tests.

Words are plain tuples of positive integers; a ShuffleSum is a dict mapping
word -> Fraction.  A MomentSpec maps a letter i to its multiplicity m_i and
describes the functional  prod_i x_i(alpha)^(m_i)  with x_k(alpha) the k-th
power path integral of alpha.

Memo caches (word integrals, moment products) are append-only with
deterministic values, so concurrent readers are safe; MC paths are seeded per
chunk by counter, making results independent of how chunks are distributed
over workers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "VPoly",
    "simplex_monomial_integral",
    "simplex_integrate",
    "pairing_integral",
    "monomial_bridge_polynomial",
    "monomial_simplex_integral",
    "shuffle",
    "shuffle_multi",
    "word_integral",
    "moment_product",
    "x1_even_moment",
    "mc_estimate",
]

Word = tuple[int, ...]
ShuffleSum = dict[Word, Fraction]
MomentSpec = Mapping[int, int]


# ----------------------------------------------------------------------
# polynomials in the simplex variables v_1..v_n
# ----------------------------------------------------------------------

class VPoly:
    """Sparse polynomial over Q in v_1, ..., v_n (exponent-tuple keyed)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                key = _trim(tuple(mono))
                acc = clean.get(key, Fraction(0)) + c
                if acc == 0:
                    clean.pop(key, None)
                else:
                    clean[key] = acc
        self.terms = clean

    @staticmethod
    def zero() -> "VPoly":
        return VPoly()

    @staticmethod
    def one() -> "VPoly":
        return VPoly({(): Fraction(1)})

    @staticmethod
    def var(i: int) -> "VPoly":
        """The variable v_i (1-based)."""
        return VPoly({(0,) * (i - 1) + (1,): Fraction(1)})

    def __add__(self, other: "VPoly") -> "VPoly":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            acc = out.get(mono, Fraction(0)) + c
            if acc == 0:
                out.pop(mono, None)
            else:
                out[mono] = acc
        p = VPoly.__new__(VPoly)
        p.terms = out
        return p

    def __neg__(self) -> "VPoly":
        p = VPoly.__new__(VPoly)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "VPoly") -> "VPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return VPoly.zero()
            p = VPoly.__new__(VPoly)
            p.terms = {m: c * other for m, c in self.terms.items()}
            return p
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                acc = out.get(mono, Fraction(0)) + c1 * c2
                if acc == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = acc
        p = VPoly.__new__(VPoly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "VPoly":
        out = VPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def max_var(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def eval(self, values: Sequence[float]) -> float:
        total = 0.0
        for mono, c in self.terms.items():
            v = float(c)
            for i, e in enumerate(mono):
                if e:
                    v *= values[i] ** e
            total += v
        return total

    def __eq__(self, other):
        return isinstance(other, VPoly) and self.terms == other.terms

    def __repr__(self):
        return f"VPoly({self.terms!r})"


def _trim(mono: tuple[int, ...]) -> tuple[int, ...]:
    while mono and mono[-1] == 0:
        mono = mono[:-1]
    return mono


def _mono_mul(m1: tuple[int, ...], m2: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in itertools.zip_longest(m1, m2, fillvalue=0))


# ----------------------------------------------------------------------
# simplex integrals
# ----------------------------------------------------------------------

def simplex_monomial_integral(k: Sequence[int]) -> Fraction:
    """Integral of v_1^k1 ... v_n^kn over 0 <= v_1 <= ... <= v_n <= 1.

    Equals 1 / ((k1+1)(k1+k2+2)...(k1+...+kn+n)).
    """
    denom = 1
    partial = 0
    for j, kj in enumerate(k, start=1):
        if kj < 0:
            raise ValueError("exponents must be non-negative")
        partial += kj
        denom *= partial + j
    return Fraction(1, denom)


def simplex_integrate(p: VPoly, n: int) -> Fraction:
    """Term-wise simplex integral of ``p`` over the ordered n-simplex."""
    if p.max_var() > n:
        raise ValueError(f"polynomial uses v_{p.max_var()} but dimension is {n}")
    total = Fraction(0)
    for mono, c in p.terms.items():
        exps = tuple(mono) + (0,) * (n - len(mono))
        total += c * simplex_monomial_integral(exps)
    return total


# ----------------------------------------------------------------------
# bridge moments of products alpha(v_1)...alpha(v_2n)
# ----------------------------------------------------------------------

def _pairings(indices: tuple[int, ...]):
    """Perfect pairings as tuples of (i, j) with i < j, first elements sorted."""
    if not indices:
        yield ()
        return
    first = indices[0]
    rest = indices[1:]
    for pos in range(len(rest)):
        partner = rest[pos]
        remaining = rest[:pos] + rest[pos + 1 :]
        for tail in _pairings(remaining):
            yield ((first, partner),) + tail


def pairing_integral(n: int) -> VPoly:
    """Bridge moment of alpha(v_1)...alpha(v_2n) on the ordered simplex.

    Sum over the (2n-1)!! pairings of the covariances v_i(1 - v_j), i < j.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = VPoly.zero()
    for pairing in _pairings(tuple(range(1, 2 * n + 1))):
        term = VPoly.one()
        for i, j in pairing:
            term = term * (VPoly.var(i) - VPoly.var(i) * VPoly.var(j))
        total = total + term
    return total


def _symmetric_moment_configs(I: Sequence[int]):
    """Gaussian-moment index data for the monomial with exponents I.

    Yields (weight, diag, offdiag) where diag[j] is the self-pairing count of
    slot j, offdiag[(j,m)] (j<m) the total cross count s_{jm}, and weight the
    number of ordered matrices k_{jm} realizing the configuration divided by
    the factorials, i.e. weight = 2^(sum s) / (prod s! * prod diag!).

    The enumeration follows the constraint set: sum over all entries = |I|/2
    and per slot 2 k_jj + sum_m s_{jm} = i_j.
    """
    n = len(I)

    def rows(j: int, residual: list[int], diag: tuple[int, ...], off: dict):
        if j == n:
            weight = Fraction(1)
            s_total = 0
            for d in diag:
                weight /= factorial(d)
            for s in off.values():
                weight /= factorial(s)
                s_total += s
            yield weight * (2 ** s_total), diag, dict(off)
            return
        # residual[j] counts the remaining degree of slot j after earlier rows
        rj = residual[j]
        for d in range(rj // 2, -1, -1):
            rem = rj - 2 * d
            # distribute rem over s_{j,m} for m > j
            targets = list(range(j + 1, n))

            def distribute(idx: int, left: int, off_acc: dict):
                if idx == len(targets):
                    if left == 0:
                        new_res = list(residual)
                        new_res[j] = 0
                        for m, s in off_acc.items():
                            new_res[m] -= s
                        if all(r >= 0 for r in new_res):
                            yield from rows(j + 1, new_res, diag + (d,), off | {
                                (j, m): s for m, s in off_acc.items() if s
                            })
                    return
                m = targets[idx]
                cap = min(left, residual[m])
                for s in range(cap, -1, -1):
                    yield from distribute(idx + 1, left - s, off_acc | {m: s})

            yield from distribute(0, rem, {})

    if sum(I) % 2 == 1:
        return
    yield from rows(0, list(I), (), {})


def monomial_bridge_polynomial(I: Sequence[int]) -> VPoly:
    """Bridge moment of alpha(v_1)^i1 ... alpha(v_n)^in as a VPoly.

    Valid on the ordered simplex v_1 <= ... <= v_n; zero when sum(I) is odd.
    """
    I = tuple(int(i) for i in I)
    if any(i < 0 for i in I):
        raise ValueError("exponents must be non-negative")
    total_deg = sum(I)
    if total_deg % 2 == 1:
        return VPoly.zero()
    if total_deg == 0:
        return VPoly.one()
    half = total_deg // 2
    prefactor = Fraction(1)
    for i in I:
        prefactor *= factorial(i)
    prefactor *= Fraction(1, 2**half)
    out = VPoly.zero()
    for weight, diag, off in _symmetric_moment_configs(I):
        term = VPoly.one()
        for j, d in enumerate(diag):
            if d:
                vj = VPoly.var(j + 1)
                term = term * (vj - vj * vj) ** d
        for (j, m), s in off.items():
            vj, vm = VPoly.var(j + 1), VPoly.var(m + 1)
            term = term * (vj - vj * vm) ** s
        out = out + term * weight
    return out * prefactor


def monomial_simplex_integral(I: Sequence[int]) -> Fraction:
    """Exact simplex integral of the bridge moment with exponents I.

    Direct combinatorial formula: binomially expand (1-v_m)^(K_m) and apply
    the simplex monomial integral to each product of powers; must agree with
    simplex_integrate(monomial_bridge_polynomial(I)).
    """
    I = tuple(int(i) for i in I)
    total_deg = sum(I)
    if total_deg % 2 == 1:
        return Fraction(0)
    n = len(I)
    if total_deg == 0:
        return Fraction(1, factorial(n)) if n else Fraction(1)
    half = total_deg // 2
    prefactor = Fraction(1)
    for i in I:
        prefactor *= factorial(i)
    prefactor *= Fraction(1, 2**half)
    total = Fraction(0)
    for weight, diag, off in _symmetric_moment_configs(I):
        K = [0] * n
        for j, d in enumerate(diag):
            K[j] += d
        for (j, m), s in off.items():
            K[m] += s
        # r-sums: expanding (1-v_p)^(K_p) gives powers v_p^(i_p - r_p) with
        # sign (-1)^(K_p - r_p), then the simplex monomial formula applies
        # with the running sums p + sum_{l<=p} (i_l - r_l).
        acc = Fraction(0)
        for rvec in itertools.product(*(range(Kp + 1) for Kp in K)):
            num = 1
            for Kp, rp in zip(K, rvec):
                num *= (-1) ** (Kp - rp) * _binom_int(Kp, rp)
            den = 1
            run = 0
            for p in range(n):
                run += I[p] - rvec[p]
                den *= run + p + 1
            acc += Fraction(num, den)
        total += weight * acc
    return prefactor * total


def _binom_int(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


# ----------------------------------------------------------------------
# shuffle products and word integrals
# ----------------------------------------------------------------------

def shuffle(w1: Sequence[int], w2: Sequence[int]) -> ShuffleSum:
    """All interlacings of two words preserving each word's internal order."""
    w1, w2 = tuple(w1), tuple(w2)
    out: ShuffleSum = {}

    def rec(a: Word, b: Word, prefix: Word, mult: int):
        if not a:
            word = prefix + b
            out[word] = out.get(word, Fraction(0)) + mult
            return
        if not b:
            word = prefix + a
            out[word] = out.get(word, Fraction(0)) + mult
            return
        rec(a[1:], b, prefix + (a[0],), mult)
        rec(a, b[1:], prefix + (b[0],), mult)

    rec(w1, w2, (), 1)
    return out


def shuffle_multi(words: Iterable[Sequence[int]]) -> ShuffleSum:
    """Iterated shuffle product of several words (left fold)."""
    acc: ShuffleSum = {(): Fraction(1)}
    for w in words:
        w = tuple(w)
        nxt: ShuffleSum = {}
        for word, coeff in acc.items():
            for word2, coeff2 in shuffle(word, w).items():
                nxt[word2] = nxt.get(word2, Fraction(0)) + coeff * coeff2
        acc = nxt
    return acc


_word_integral_cache: dict[Word, Fraction] = {}


def word_integral(w) -> Fraction:
    """Simplex integral of the bridge moment indexed by a word (or a sum).

    For a word (i_1, ..., i_n) this is the integral over the ordered n-simplex
    of the bridge moment of alpha(v_1)^(i_1)...alpha(v_n)^(i_n); the map is
    extended linearly to ShuffleSum values.  Order matters: words index points
    on the ordered simplex.
    """
    if isinstance(w, Mapping):
        return sum(
            (coeff * word_integral(word) for word, coeff in w.items()),
            Fraction(0),
        )
    w = tuple(int(i) for i in w)
    cached = _word_integral_cache.get(w)
    if cached is None:
        cached = monomial_simplex_integral(w)
        _word_integral_cache[w] = cached
    return cached


def _normalize_spec(spec: MomentSpec) -> tuple[tuple[int, int], ...]:
    items = sorted((int(i), int(m)) for i, m in spec.items())
    if any(i < 1 or m < 1 for i, m in items):
        raise ValueError("letters and multiplicities must be positive")
    if len({i for i, _ in items}) != len(items):
        raise ValueError("letters must be distinct")
    return tuple(items)


_moment_cache: dict[tuple[tuple[int, int], ...], Fraction] = {}


def moment_product(spec: MomentSpec) -> Fraction:
    """Exact bridge moment of prod_i x_i(alpha)^(m_i).

    Computed as m_1!...m_r! times the word integral of the shuffle product of
    the blocks (i,...,i) repeated m_i times; zero when sum i*m_i is odd.
    """
    key = _normalize_spec(spec)
    cached = _moment_cache.get(key)
    if cached is not None:
        return cached
    degree = sum(i * m for i, m in key)
    if degree % 2 == 1:
        value = Fraction(0)
    else:
        blocks = [(i,) * m for i, m in key]
        combo = shuffle_multi(blocks)
        value = word_integral(combo)
        for _, m in key:
            value *= factorial(m)
    _moment_cache[key] = value
    return value


# ----------------------------------------------------------------------
# even moments of x_1 through the permutation/index-tuple formula
# ----------------------------------------------------------------------

def _canonical_matchings(n: int):
    """Matchings of {1..2n} as tuples ((a_1,b_1),...) with a_i<b_i, a_1<a_2<..."""
    yield from _pairings(tuple(range(1, 2 * n + 1)))


def x1_even_moment(n: int) -> Fraction:
    """Bridge moment of x_1(alpha)^(2n) via the matching/J-tuple expansion.

    Each matching contributes alternating sums over subsets J of its pair
    seconds; the subset-dependent index list is sorted and fed into the
    linear-monomial simplex integral.  Must agree with
    moment_product({1: 2n}).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for matching in _canonical_matchings(n):
        firsts = [a for a, _ in matching]
        seconds = [b for _, b in matching]
        for k in range(0, n + 1):
            for J in itertools.combinations(range(n), k):
                idx = sorted(firsts + [seconds[j] for j in J])
                num = 1
                for pos, val in enumerate(idx):
                    num *= val + pos
                total += Fraction((-1) ** k * num, factorial(3 * n + k))
    return factorial(2 * n) * total


# ----------------------------------------------------------------------
# Monte Carlo oracle
# ----------------------------------------------------------------------

_MC_CHUNK = 8192


def _mc_chunk_sums(key, n_grid: int, seed: int, chunk_index: int, todo: int):
    """(sum, sum of squares) of the functional over one counter-seeded chunk."""
    v = np.linspace(0.0, 1.0, n_grid + 1)
    dt = 1.0 / n_grid
    rng = np.random.Generator(np.random.Philox(key=[seed, chunk_index]))
    incr = rng.standard_normal((todo, n_grid)) * np.sqrt(dt)
    w = np.concatenate([np.zeros((todo, 1)), np.cumsum(incr, axis=1)], axis=1)
    alpha = w - v[None, :] * w[:, -1:]
    vals = np.ones(todo)
    for letter, mult in key:
        xk = np.trapezoid(alpha**letter, dx=dt, axis=1)
        vals = vals * xk**mult
    return float(vals.sum()), float((vals**2).sum())


def mc_estimate(
    spec: MomentSpec,
    n_paths: int,
    n_grid: int,
    seed: int,
    n_workers: int = 1,
) -> tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of a bridge moment.

    Bridges are built from cumulative Gaussian increments W conditioned to
    return to zero via alpha(v) = W(v) - v W(1); the path functionals x_k are
    trapezoid sums on a uniform grid.  Chunks of paths are seeded by their
    index, so the estimate is identical however the chunks are distributed
    over workers.
    """
    if n_paths < 1000:
        raise ValueError("n_paths must be >= 1000")
    if n_grid < 64:
        raise ValueError("n_grid must be >= 64")
    key = _normalize_spec(spec)
    sizes = []
    done = 0
    while done < n_paths:
        todo = min(_MC_CHUNK, n_paths - done)
        sizes.append(todo)
        done += todo
    if n_workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            parts = list(
                pool.map(
                    lambda args: _mc_chunk_sums(key, n_grid, seed, *args),
                    list(enumerate(sizes)),
                )
            )
    else:
        parts = [
            _mc_chunk_sums(key, n_grid, seed, i, todo)
            for i, todo in enumerate(sizes)
        ]
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    mean = total / n_paths
    var = max(total_sq / n_paths - mean**2, 0.0)
    stderr = (var / n_paths) ** 0.5
    return mean, stderr
