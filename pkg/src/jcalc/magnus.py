"""Truncated Magnus expansion, lower central series, and Lyndon coordinates.

The Magnus expansion sends x_i to 1 + X_i and x_i^-1 to 1 - X_i + X_i^2 - ...
in the ring of non-commutative integer power series.  A word lies in the
k-th lower central series term Gamma^k exactly when its expansion is
1 + (terms of degree >= k), so truncated expansions decide Gamma^k
membership and encode cosets of Gamma^m canonically.

Monomials are tuples of generator indices, e.g. ``(1, 2)`` for X_1 X_2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from ._kernels import magnus_dense
from .errors import PreconditionError, RankError
from .words import ReducedWord, commutator, generator

__all__ = [
    "TruncSeries", "LieVector", "LcsDegree",
    "magnus", "lcs_degree", "in_gamma", "lyndon_words", "witt_rank",
    "lyndon_polynomial", "lyndon_bracket_word", "lyndon_bracket_text",
    "lie_coordinates", "lie_element", "coset_series", "standard_factorization",
    "substitute", "monomials",
]


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All degree-``d`` monomials in lex order (the dense index order)."""
    return tuple(product(range(1, n + 1), repeat=d))


def _mono_text(m):
    return "".join(f"X{i}" for i in m)


class TruncSeries:
    """A non-commutative integer power series truncated above degree ``bound``."""

    __slots__ = ("rank", "bound", "terms")

    def __init__(self, rank: int, bound: int, terms=None):
        self.rank = rank
        self.bound = bound
        clean = {}
        if terms:
            for m, c in (terms.items() if isinstance(terms, dict) else terms):
                m = tuple(m)
                if len(m) > bound:
                    continue
                if any(not 1 <= i <= rank for i in m):
                    raise RankError(f"monomial {m} out of range for rank {rank}")
                if c:
                    clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, rank, bound, terms):
        self = object.__new__(cls)
        self.rank = rank
        self.bound = bound
        self.terms = terms
        return self

    @classmethod
    def one(cls, rank: int, bound: int) -> TruncSeries:
        return cls._raw(rank, bound, {(): 1})

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.rank != self.rank:
            raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        bound = min(self.bound, other.bound)
        out = {m: c for m, c in self.terms.items() if len(m) <= bound}
        for m, c in other.terms.items():
            if len(m) <= bound:
                v = out.get(m, 0) + c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return TruncSeries._raw(self.rank, bound, out)

    def __neg__(self):
        return TruncSeries._raw(self.rank, self.bound, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncSeries._raw(self.rank, self.bound,
                                    {m: c * other for m, c in self.terms.items()} if other else {})
        self._check(other)
        bound = min(self.bound, other.bound)
        out = {}
        for u, a in self.terms.items():
            room = bound - len(u)
            if room < 0:
                continue
            for v, b in other.terms.items():
                if len(v) <= room:
                    m = u + v
                    c = out.get(m, 0) + a * b
                    if c:
                        out[m] = c
                    else:
                        out.pop(m, None)
        return TruncSeries._raw(self.rank, bound, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.rank, self.bound, self.terms) == (other.rank, other.bound, other.terms)

    def __hash__(self):
        return hash((self.rank, self.bound, frozenset(self.terms.items())))

    def truncate(self, bound: int) -> TruncSeries:
        if bound > self.bound:
            raise ValueError(f"cannot raise truncation bound from {self.bound} to {bound}")
        return TruncSeries._raw(self.rank, bound, {m: c for m, c in self.terms.items() if len(m) <= bound})

    def homogeneous(self, d: int) -> dict[tuple[int, ...], int]:
        return {m: c for m, c in self.terms.items() if len(m) == d}

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def lowest_positive_degree(self):
        """Smallest ``d >= 1`` with a nonzero degree-d term, or ``None``."""
        degs = [len(m) for m in self.terms if m]
        return min(degs) if degs else None

    def coordinates(self, lo: int, hi: int) -> list[int]:
        """Coefficients of all monomials of degrees ``lo..hi`` in dense order."""
        return [self.terms.get(m, 0) for d in range(lo, hi + 1) for m in monomials(self.rank, d)]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        parts = []
        for m, c in self.sorted_terms():
            body = _mono_text(m) if m else ""
            if not m:
                core = str(abs(c))
            elif abs(c) == 1:
                core = body
            else:
                core = f"{abs(c)}·{body}"
            if not parts:
                parts.append(core if c > 0 else f"-{core}")
            else:
                parts.append(f" {'-' if c < 0 else '+'} {core}")
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"TruncSeries(rank={self.rank}, bound={self.bound}, {str(self)!r})"


def magnus(w: ReducedWord, bound: int) -> TruncSeries:
    """Magnus expansion of ``w`` with all terms of degree > ``bound`` dropped."""
    if bound < 1:
        raise ValueError("truncation bound must be >= 1")
    n = w.rank
    dense = magnus_dense(w.code, n, bound)
    terms = {}
    for d, row in enumerate(dense):
        monos = monomials(n, d)
        for idx, c in enumerate(row):
            if c:
                terms[monos[idx]] = c
    return TruncSeries._raw(n, bound, terms)


@dataclass(frozen=True)
class LcsDegree:
    """Lower-central-series degree of a word, possibly only a lower bound.

    ``exact`` is False when the expansion vanished up to the truncation bound
    (the true degree is then at least ``value``).  The empty word has
    ``value = inf``.
    """

    value: float
    exact: bool

    def __str__(self):
        if self.value == math.inf:
            return "infinite"
        return str(int(self.value)) if self.exact else f"≥ {int(self.value)}"

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            return self.exact and self.value == other
        if isinstance(other, LcsDegree):
            return (self.value, self.exact) == (other.value, other.exact)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.exact))

    def at_least(self, k: int) -> bool:
        """Decide ``degree >= k``; raises if the truncation was too coarse."""
        if self.value >= k:
            return True
        if self.exact:
            return False
        raise ValueError(f"degree only known to be {self}; cannot compare with {k}")


def lcs_degree(w: ReducedWord, bound: int) -> LcsDegree:
    if not w.code:
        return LcsDegree(math.inf, True)
    d = magnus(w, bound).lowest_positive_degree()
    if d is None:
        return LcsDegree(bound + 1, False)
    return LcsDegree(d, True)


def in_gamma(w: ReducedWord, k: int, bound: int | None = None) -> bool:
    """Whether ``w`` lies in Gamma^k (Gamma^1 is the whole group)."""
    if bound is None:
        bound = k
    if bound < k:
        raise ValueError(f"bound {bound} is below the level {k}")
    if k <= 1 or not w.code:
        return True
    return magnus(w, k - 1).lowest_positive_degree() is None


# -- Lyndon words --------------------------------------------------------

@lru_cache(maxsize=None)
def lyndon_words(n: int, j: int) -> tuple[tuple[int, ...], ...]:
    """Lyndon words of length ``j`` over ``1..n`` in lexicographic order (Duval)."""
    if n < 1 or j < 1:
        raise ValueError("need n >= 1 and j >= 1")
    out = []
    w = [0]
    while w:
        if len(w) == j:
            out.append(tuple(a + 1 for a in w))
        # extend periodically to length j, then step to the next candidate
        m = len(w)
        while len(w) < j:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


def _mobius(d):
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def witt_rank(n: int, j: int) -> int:
    """Rank of the degree-``j`` part of the free Lie ring on ``n`` generators."""
    if n < 1 or j < 1:
        raise ValueError("need n >= 1 and j >= 1")
    total = sum(_mobius(d) * n ** (j // d) for d in range(1, j + 1) if j % d == 0)
    return total // j


def standard_factorization(u: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a Lyndon word ``u`` (length >= 2) as ``v w`` with ``w`` its longest proper Lyndon suffix."""
    for i in range(1, len(u)):
        s = u[i:]
        if _is_lyndon(s):
            return u[:i], s
    raise ValueError(f"{u} has no proper Lyndon suffix")


def _is_lyndon(u):
    return all(u < u[i:] + u[:i] for i in range(1, len(u)))


@lru_cache(maxsize=None)
def lyndon_polynomial(u: tuple[int, ...]) -> dict:
    """Expansion of the standard bracketing of ``u`` in the tensor algebra.

    The result's lex-smallest monomial is ``u`` itself with coefficient 1.
    """
    if len(u) == 1:
        return {u: 1}
    v, w = standard_factorization(u)
    pv, pw = lyndon_polynomial(v), lyndon_polynomial(w)
    out = {}
    for a, ca in pv.items():
        for b, cb in pw.items():
            out[a + b] = out.get(a + b, 0) + ca * cb
            out[b + a] = out.get(b + a, 0) - ca * cb
    out = {m: c for m, c in out.items() if c}
    lead = min(out)
    assert lead == u and out[lead] == 1, f"bracketing of {u} is not unitriangular"
    return out


def lyndon_bracket_word(u: Sequence[int], rank: int) -> ReducedWord:
    """Group commutator following the standard bracketing of ``u``."""
    u = tuple(u)
    if len(u) == 1:
        return generator(rank, u[0])
    v, w = standard_factorization(u)
    return commutator(lyndon_bracket_word(v, rank), lyndon_bracket_word(w, rank))


def lyndon_bracket_text(u: Sequence[int]) -> str:
    u = tuple(u)
    if len(u) == 1:
        return f"x{u[0]}"
    v, w = standard_factorization(u)
    return f"[{lyndon_bracket_text(v)},{lyndon_bracket_text(w)}]"


@dataclass(frozen=True)
class LieVector:
    """Integer coordinates of a degree-``degree`` free Lie element over the Lyndon basis."""

    rank: int
    degree: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(lyndon_words(self.rank, self.degree)):
            raise ValueError("coordinate vector does not match the Lyndon basis size")

    @classmethod
    def zero(cls, rank: int, degree: int) -> LieVector:
        return cls(rank, degree, (0,) * witt_rank(rank, degree))

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return lyndon_words(self.rank, self.degree)

    def __add__(self, other):
        if (self.rank, self.degree) != (other.rank, other.degree):
            raise ValueError("Lie vectors of different rank or degree")
        return LieVector(self.rank, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LieVector(self.rank, self.degree, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def items(self):
        return [(u, c) for u, c in zip(self.basis, self.coords) if c]

    def __str__(self):
        parts = []
        for u, c in self.items():
            core = f"{abs(c)}·{lyndon_bracket_text(u)}"
            if not parts:
                parts.append(core if c > 0 else f"-{core}")
            else:
                parts.append(f" {'-' if c < 0 else '+'} {core}")
        return "".join(parts) if parts else "0"


def _coordinates_of(part: dict, n: int, k: int) -> tuple[int, ...]:
    rem = dict(part)
    coords = []
    for u in lyndon_words(n, k):
        c = rem.get(u, 0)
        coords.append(c)
        if c:
            for m, a in lyndon_polynomial(u).items():
                v = rem.get(m, 0) - c * a
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
    if rem:
        raise PreconditionError("homogeneous part is not a Lie element")
    return tuple(coords)


def lie_coordinates(w: ReducedWord, k: int) -> LieVector:
    """Class of ``w`` in Gamma^k / Gamma^(k+1) over the Lyndon basis."""
    s = magnus(w, k)
    low = s.lowest_positive_degree()
    if low is not None and low < k:
        raise PreconditionError(f"word is not in Gamma^{k}: its lower central series degree is {low}")
    return LieVector(w.rank, k, _coordinates_of(s.homogeneous(k), w.rank, k))


def lie_element(s: TruncSeries, k: int) -> LieVector:
    """Lyndon coordinates of the degree-``k`` part of ``s`` (which must be a Lie element)."""
    return LieVector(s.rank, k, _coordinates_of(s.homogeneous(k), s.rank, k))


def coset_series(w: ReducedWord, k: int, m: int) -> TruncSeries:
    """Canonical encoding of the coset ``w Gamma^m`` for ``w`` in Gamma^k."""
    if m <= k:
        raise ValueError(f"need m > k, got k={k}, m={m}")
    if m - 1 < 1:
        return TruncSeries.one(w.rank, 0)
    s = magnus(w, m - 1)
    low = s.lowest_positive_degree()
    if low is not None and low < k:
        raise PreconditionError(f"word is not in Gamma^{k}: its lower central series degree is {low}")
    return s


def substitute(s: TruncSeries, images: Sequence[TruncSeries]) -> TruncSeries:
    """Replace each X_j by ``images[j-1]`` (which must have zero constant term)."""
    if len(images) != s.rank:
        raise RankError(f"need {s.rank} images, got {len(images)}")
    for q in images:
        if q.terms.get((), 0):
            raise ValueError("substituted series must have zero constant term")
    rank = images[0].rank
    bound = s.bound
    one = TruncSeries.one(rank, bound)
    out = TruncSeries(rank, bound)
    cache = {(): one}

    def power_of(m):
        if m not in cache:
            cache[m] = power_of(m[:-1]) * images[m[-1] - 1]
        return cache[m]

    for m, c in s.terms.items():
        out = out + power_of(m) * c
    return out
