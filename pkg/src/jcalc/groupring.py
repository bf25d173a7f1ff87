"""Integral group ring of F_n, its abelianization, and matrices over both.

``GroupRingElem`` is a finite integer combination of reduced words (non-
commutative); ``LaurentPoly`` is its image in Z[H_1(F_n)], i.e. Laurent
polynomials in commuting variables x_1..x_n.  Coefficients are Python ints,
so nothing overflows.

Terms print in a fixed order: positive coefficients before negative ones,
then by length (total absolute degree for Laurent monomials), then
lexicographically.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Iterable, Sequence

from .errors import RankError
from .words import Endomorphism, ReducedWord, apply, exponent_sums, format_code

__all__ = [
    "GroupRingElem", "LaurentPoly", "GRMatrix",
    "gr_add", "gr_mul", "bar", "augmentation", "abelianize",
    "laurent_det", "is_unit", "permutation_sign",
]


def _letter_key(a):
    return (abs(a), a < 0)


def _coef_text(c, body, first):
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if body == "1":
        core = str(mag)
    elif mag == 1:
        core = body
    else:
        core = f"{mag}·{body}"
    if first:
        return core if c > 0 else f"-{core}"
    return f" {sign} {core}"


class GroupRingElem:
    """An element of Z[F_n]; immutable."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                if isinstance(w, ReducedWord):
                    if w.rank != rank:
                        raise RankError(f"word of rank {w.rank} in Z[F_{rank}]")
                    w = w.code
                if c:
                    clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def _raw(cls, rank, terms):
        self = object.__new__(cls)
        self.rank = rank
        self.terms = terms
        return self

    @classmethod
    def word(cls, w: ReducedWord, coeff: int = 1) -> GroupRingElem:
        return cls._raw(w.rank, {w.code: coeff} if coeff else {})

    @classmethod
    def scalar(cls, rank: int, c: int) -> GroupRingElem:
        return cls._raw(rank, {(): c} if c else {})

    @classmethod
    def zero(cls, rank: int) -> GroupRingElem:
        return cls._raw(rank, {})

    @classmethod
    def one(cls, rank: int) -> GroupRingElem:
        return cls._raw(rank, {(): 1})

    def _coerce(self, other):
        if isinstance(other, GroupRingElem):
            if other.rank != self.rank:
                raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, int):
            return GroupRingElem.scalar(self.rank, other)
        if isinstance(other, ReducedWord):
            if other.rank != self.rank:
                raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
            return GroupRingElem.word(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return GroupRingElem._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem._raw(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                # reduce across the junction only
                i = 0
                m = min(len(u), len(v))
                while i < m and u[len(u) - 1 - i] == -v[i]:
                    i += 1
                w = u[: len(u) - i] + v[i:]
                c = out.get(w, 0) + a * b
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
        return GroupRingElem._raw(self.rank, out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.scalar(self.rank, other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(),
                      key=lambda t: (t[1] < 0, len(t[0]), [_letter_key(a) for a in t[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        return "".join(_coef_text(c, format_code(w), i == 0)
                       for i, (w, c) in enumerate(self.sorted_terms()))

    def __repr__(self):
        return f"GroupRingElem({self.rank}, {str(self)!r})"

    def map_words(self, f: Callable[[ReducedWord], ReducedWord], rank: int | None = None) -> GroupRingElem:
        """Extend a map on group elements linearly (``f`` must be a homomorphism for ring maps)."""
        rank = self.rank if rank is None else rank
        out = {}
        for w, c in self.terms.items():
            v = f(ReducedWord._raw(self.rank, w)).code
            out[v] = out.get(v, 0) + c
        return GroupRingElem(rank, out)

    def transport(self, phi: Endomorphism) -> GroupRingElem:
        """Apply the ring endomorphism of Z[F_n] induced by ``phi``."""
        return self.map_words(lambda w: apply(phi, w))


class LaurentPoly:
    """An element of Z[x_1^±1, ..., x_n^±1] (commuting variables); immutable."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = tuple(e)
                if len(e) != rank:
                    raise RankError(f"exponent vector of length {len(e)} for rank {rank}")
                if c:
                    clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, rank, terms):
        self = object.__new__(cls)
        self.rank = rank
        self.terms = terms
        return self

    @classmethod
    def scalar(cls, rank: int, c: int) -> LaurentPoly:
        return cls._raw(rank, {(0,) * rank: c} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> LaurentPoly:
        return cls(len(exps), {tuple(exps): c})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, int):
            return LaurentPoly.scalar(self.rank, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e, a in self.terms.items():
            for f, b in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                c = out.get(g, 0) + a * b
                if c:
                    out[g] = c
                else:
                    out.pop(g, None)
        return LaurentPoly._raw(self.rank, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.scalar(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def negate_exponents(self) -> LaurentPoly:
        return LaurentPoly._raw(self.rank, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(),
                      key=lambda t: (t[1] < 0, sum(abs(x) for x in t[0]), [(-x if x < 0 else x, x < 0) for x in t[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        return "".join(_coef_text(c, _mono_text(e), i == 0)
                       for i, (e, c) in enumerate(self.sorted_terms()))

    def __repr__(self):
        return f"LaurentPoly({self.rank}, {str(self)!r})"


def _mono_text(e):
    parts = [f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, 1) if a]
    return " ".join(parts) if parts else "1"


# -- functional interface ------------------------------------------------

def gr_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    if a.rank != b.rank:
        raise RankError(f"rank mismatch: {a.rank} vs {b.rank}")
    return a + b


def gr_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    if a.rank != b.rank:
        raise RankError(f"rank mismatch: {a.rank} vs {b.rank}")
    return a * b


def bar(a: GroupRingElem) -> GroupRingElem:
    """The involution induced by ``g -> g^-1``."""
    return GroupRingElem._raw(a.rank, {tuple(-x for x in reversed(w)): c for w, c in a.terms.items()})


def augmentation(a) -> int:
    if isinstance(a, LaurentPoly):
        return a.augmentation()
    return sum(a.terms.values())


def abelianize(a: GroupRingElem) -> LaurentPoly:
    out = {}
    for w, c in a.terms.items():
        e = tuple(exponent_sums(ReducedWord._raw(a.rank, w)))
        out[e] = out.get(e, 0) + c
    return LaurentPoly(a.rank, out)


def is_unit(p: LaurentPoly) -> bool:
    """Units of Z[Z^n] are exactly ``±(monomial)``."""
    if len(p.terms) != 1:
        return False
    (c,) = p.terms.values()
    return c in (1, -1)


class GRMatrix:
    """A rectangular matrix over Z[F_n] or over its abelianization."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Iterable]):
        rows = [tuple(r) for r in entries]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix must be rectangular and nonempty")
        ranks = {e.rank for r in rows for e in r}
        if len(ranks) != 1:
            raise RankError(f"mixed ranks in matrix: {sorted(ranks)}")
        self.entries = tuple(rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, GRMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: GRMatrix) -> GRMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return GRMatrix(out)

    def map(self, f: Callable) -> GRMatrix:
        return GRMatrix([[f(e) for e in r] for r in self.entries])

    def __str__(self):
        return "\n".join("[ " + " , ".join(str(e) for e in r) + " ]" for r in self.entries)

    def __repr__(self):
        return f"GRMatrix({[[str(e) for e in r] for r in self.entries]!r})"


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def laurent_det(m: GRMatrix) -> LaurentPoly:
    """Determinant over the commutative Laurent ring (Laplace expansion, memoized on column sets)."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    rank = m.entries[0][0].rank
    for r in m.entries:
        for e in r:
            if not isinstance(e, LaurentPoly):
                raise TypeError("laurent_det needs LaurentPoly entries; abelianize first")
    memo = {}

    def minor(row, cols):
        # determinant of rows row..n-1 restricted to the sorted column tuple
        if row == n:
            return LaurentPoly.scalar(rank, 1)
        if cols in memo:
            return memo[cols]
        acc = LaurentPoly.scalar(rank, 0)
        for pos, j in enumerate(cols):
            e = m.entries[row][j]
            if not e:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = e * sub
            acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))


def leibniz_det(m: GRMatrix) -> LaurentPoly:
    """Determinant by the permutation expansion; independent check for ``laurent_det``."""
    n = m.rows
    rank = m.entries[0][0].rank
    acc = LaurentPoly.scalar(rank, 0)
    for perm in permutations(range(n)):
        term = LaurentPoly.scalar(rank, permutation_sign(perm))
        for i in range(n):
            term = term * m.entries[i][perm[i]]
        acc = acc + term
    return acc
