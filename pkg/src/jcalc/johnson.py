"""Johnson homomorphisms J_k and their refinements on the filtration of 2-connected endomorphisms.

For phi acting trivially on N_k, ``J_k(phi)`` sends x_i to the class of
``phi(x_i) x_i^-1`` in Gamma^k / Gamma^(k+1) (Lyndon coordinates), and the
refinement sends it to the class in Gamma^k / Gamma^(2k-1), encoded as the
Magnus expansion truncated below degree 2k-1.  Only the degree-k part of
that encoding (the first projection) is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._intmat import int_inverse
from .errors import PreconditionError, RankError
from .foxrep import is_two_connected
from .magnus import (
    LieVector, TruncSeries, coset_series, in_gamma, lie_coordinates, lie_element,
    lyndon_polynomial, lyndon_words, magnus, substitute,
)
from .words import Endomorphism, ReducedWord, apply, compose, invert, multiply

__all__ = [
    "JohnsonValue", "RefinedJohnsonValue", "defects", "filtration_level",
    "johnson", "refined_johnson", "check_action_trivial", "refined_kernel_level",
    "act_linear", "equivariance_check", "search_nonequivariance", "NON_EQUIVARIANT_EXAMPLE",
]


def defects(phi: Endomorphism) -> list[ReducedWord]:
    """``phi(x_i) x_i^-1`` for each generator."""
    n = phi.rank
    return [multiply(w, ReducedWord._raw(n, (-i,))) for i, w in enumerate(phi.images, 1)]


def _require_two_connected(phi):
    tc = is_two_connected(phi)
    if not tc:
        raise PreconditionError(f"endomorphism is not 2-connected: abelianization determinant is {tc.det}")


def filtration_level(phi: Endomorphism, cap: int) -> int:
    """Largest ``k <= cap`` such that phi induces the identity on N_k."""
    _require_two_connected(phi)
    if cap <= 1:
        return cap
    level = cap
    for t in defects(phi):
        if not t:
            continue
        low = magnus(t, cap - 1).lowest_positive_degree()
        if low is not None:
            level = min(level, low)
    return level


def _require_level(phi, k):
    got = filtration_level(phi, k)
    if got < k:
        raise PreconditionError(f"endomorphism is only in filtration level {got}, need {k}")


@dataclass(frozen=True)
class JohnsonValue:
    rank: int
    k: int
    values: tuple[LieVector, ...]

    def __add__(self, other):
        if (self.rank, self.k) != (other.rank, other.k):
            raise RankError("Johnson values of different rank or level")
        return JohnsonValue(self.rank, self.k, tuple(a + b for a, b in zip(self.values, other.values)))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __str__(self):
        return "\n".join(f"x{i}: {v}" for i, v in enumerate(self.values, 1))


@dataclass(frozen=True)
class RefinedJohnsonValue:
    rank: int
    k: int
    cosets: tuple[TruncSeries, ...]

    def __post_init__(self):
        for s in self.cosets:
            assert s.terms.get((), 0) == 1
            low = s.lowest_positive_degree()
            assert low is None or low >= self.k

    def __mul__(self, other):
        if (self.rank, self.k) != (other.rank, other.k):
            raise RankError("refined Johnson values of different rank or level")
        return RefinedJohnsonValue(self.rank, self.k, tuple(a * b for a, b in zip(self.cosets, other.cosets)))

    def is_zero(self) -> bool:
        return all(s.is_one() for s in self.cosets)

    def p1(self) -> JohnsonValue:
        """The canonical first projection onto Gamma^k / Gamma^(k+1)."""
        return JohnsonValue(self.rank, self.k, tuple(lie_element(s, self.k) for s in self.cosets))

    def coordinates(self) -> list[int]:
        """Flattened monomial coefficients of degrees k..2k-2, generator by generator."""
        out = []
        for s in self.cosets:
            out += s.coordinates(self.k, 2 * self.k - 2)
        return out

    def __str__(self):
        return "\n".join(f"x{i}: {s}" for i, s in enumerate(self.cosets, 1))


def johnson(phi: Endomorphism, k: int) -> JohnsonValue:
    _require_level(phi, k)
    return JohnsonValue(phi.rank, k, tuple(lie_coordinates(t, k) for t in defects(phi)))


def refined_johnson(phi: Endomorphism, k: int) -> RefinedJohnsonValue:
    if k < 2:
        raise ValueError("the refinement is defined for k >= 2")
    _require_level(phi, k)
    return RefinedJohnsonValue(phi.rank, k, tuple(coset_series(t, k, 2 * k - 1) for t in defects(phi)))


def check_action_trivial(phi: Endomorphism, w: ReducedWord, k: int) -> bool:
    """Whether ``phi(w) w^-1`` lies in Gamma^(2k-1), for phi in level k and w in Gamma^k."""
    _require_level(phi, k)
    if not in_gamma(w, k):
        raise PreconditionError(f"word is not in Gamma^{k}")
    return in_gamma(multiply(apply(phi, w), invert(w)), 2 * k - 1)


def refined_kernel_level(phi: Endomorphism, k: int) -> bool:
    """Whether the refinement vanishes; cross-checked against the filtration level 2k-1."""
    zero = refined_johnson(phi, k).is_zero()
    deep = filtration_level(phi, 2 * k - 1) >= 2 * k - 1
    assert zero == deep, "refined Johnson kernel disagrees with the filtration"
    return zero


# -- action of GL(n, Z) through the abelianization ------------------------

def _linear_images(a, rank, bound):
    # X_j -> sum_m a[m][j] X_m
    return [TruncSeries(rank, bound, {(m + 1,): a[m][j] for m in range(rank)}) for j in range(rank)]


def _lie_series(v: LieVector, bound: int) -> TruncSeries:
    terms = {}
    for u, c in zip(lyndon_words(v.rank, v.degree), v.coords):
        if c:
            for m, a in lyndon_polynomial(u).items():
                terms[m] = terms.get(m, 0) + c * a
    return TruncSeries(v.rank, bound, terms)


def act_linear(value, a: Sequence[Sequence[int]]):
    """Act by the unimodular matrix ``a`` (columns = images of the x_j in H_1).

    ``(a . f)(x_i) = a(f(a^-1 x_i))`` where ``a`` acts on the target by the
    linear substitution X_j -> sum_m a[m][j] X_m.  On Johnson values this is
    the natural action; on refined values it is the naive graded action,
    which the refinement does not respect in general.
    """
    inv = int_inverse([list(r) for r in a])
    n, k = value.rank, value.k
    if isinstance(value, JohnsonValue):
        bound = k
        parts = [_lie_series(v, bound) for v in value.values]
    else:
        bound = 2 * k - 2
        one = TruncSeries.one(n, bound)
        parts = [s - one for s in value.cosets]
    lin = _linear_images(a, n, bound)
    out = []
    for i in range(n):
        acc = TruncSeries(n, bound)
        for j in range(n):
            if inv[j][i]:
                acc = acc + parts[j] * inv[j][i]
        out.append(substitute(acc, lin))
    if isinstance(value, JohnsonValue):
        return JohnsonValue(n, k, tuple(lie_element(s, k) for s in out))
    one = TruncSeries.one(n, bound)
    return RefinedJohnsonValue(n, k, tuple(one + s for s in out))


def equivariance_check(theta: Endomorphism, theta_inv: Endomorphism, phi: Endomorphism, k: int):
    """Compare invariants of ``theta phi theta^-1`` with the linear action on those of ``phi``.

    Returns ``(johnson_equivariant, refined_equivariant)``.
    """
    if compose(theta, theta_inv) != Endomorphism([ReducedWord._raw(theta.rank, (i,))
                                                   for i in range(1, theta.rank + 1)]):
        raise PreconditionError("theta_inv is not a right inverse of theta")
    conj = compose(compose(theta, phi), theta_inv)
    a = theta.abelianization()
    j_ok = johnson(conj, k) == act_linear(johnson(phi, k), a)
    r_ok = refined_johnson(conj, k) == act_linear(refined_johnson(phi, k), a)
    return j_ok, r_ok


def search_nonequivariance(k: int = 3):
    """First (theta, theta^-1, phi) at n=2 where the refinement is not equivariant.

    Candidates: the transvection x1 -> x1 x2 and its inverse, against phi
    inserting a weight-k Lyndon commutator after one generator.
    """
    from .magnus import lyndon_bracket_text
    from .words import parse_word

    theta = Endomorphism([parse_word("x1 x2", 2), parse_word("x2", 2)])
    theta_inv = Endomorphism([parse_word("x1 x2^-1", 2), parse_word("x2", 2)])
    for gi in (1, 2):
        for u in lyndon_words(2, k):
            imgs = ["x1", "x2"]
            imgs[gi - 1] = f"x{gi} {lyndon_bracket_text(u)}"
            phi = Endomorphism([parse_word(t, 2) for t in imgs])
            j_ok, r_ok = equivariance_check(theta, theta_inv, phi, k)
            if j_ok and not r_ok:
                return theta, theta_inv, phi
    return None


# Output of search_nonequivariance(3), frozen: theta, theta^-1, phi, k.
NON_EQUIVARIANT_EXAMPLE = (
    ("x1 x2", "x2"),
    ("x1 x2^-1", "x2"),
    ("x1 [x1,[x1,x2]]", "x2"),
    3,
)
