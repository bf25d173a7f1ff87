"""Free nilpotent quotients N_k = F_n / Gamma^k and their automorphisms.

Elements and automorphisms are carried by word lifts; equality is always
coset equality, decided by the Magnus expansion truncated below degree k.
An endomorphism of F_n induces an automorphism of N_k exactly when it is
invertible on H_1, so ``AutNk`` only checks the integer determinant.
"""

from __future__ import annotations

import re

from ._intmat import int_det, int_inverse
from .errors import ParseError, PreconditionError, RankError
from .foxrep import is_two_connected
from .magnus import in_gamma, lie_coordinates, lyndon_bracket_word, lyndon_words
from .words import (
    Endomorphism, ReducedWord, apply, boundary_word, compose, exponent_sums,
    format_endomorphism, generator, identity, invert, multiply, parse_endomorphism, power,
)

__all__ = [
    "NkElement", "AutNk", "nk_equal", "normal_form", "phi_k", "autnk_compose",
    "autnk_invert", "autnk_identity", "is_aut0", "realize", "realize_aut0",
    "format_autnk", "parse_autnk", "lie_word",
]


def lie_word(rank: int, coords, degree: int) -> ReducedWord:
    """A word whose class in Gamma^d / Gamma^(d+1) has the given Lyndon coordinates."""
    out = ReducedWord(rank)
    for u, c in zip(lyndon_words(rank, degree), coords):
        if c:
            out = multiply(out, power(lyndon_bracket_word(u, rank), c))
    return out


def normal_form(w: ReducedWord, k: int) -> ReducedWord:
    """Canonical short representative of ``w Gamma^k``.

    Peels off the abelianization, then the Lyndon coordinates degree by
    degree, so the result depends only on the coset.
    """
    rank = w.rank
    if k <= 1:
        return ReducedWord(rank)
    rep = ReducedWord(rank, [i + 1 if e > 0 else -(i + 1)
                             for i, e in enumerate(exponent_sums(w)) for _ in range(abs(e))])
    rem = multiply(invert(rep), w)
    for d in range(2, k):
        if not rem:
            break
        t = lie_word(rank, lie_coordinates(rem, d).coords, d)
        rep = multiply(rep, t)
        rem = multiply(invert(t), rem)
    return rep


class NkElement:
    """An element of N_k given by a word representative."""

    __slots__ = ("rank", "k", "rep")

    def __init__(self, rep: ReducedWord, k: int):
        if k < 1:
            raise ValueError("nilpotency level k must be >= 1")
        self.rank = rep.rank
        self.k = k
        self.rep = rep

    def _check(self, other):
        if (self.rank, self.k) != (other.rank, other.k):
            raise RankError(f"N_{self.k} of rank {self.rank} vs N_{other.k} of rank {other.rank}")

    def __eq__(self, other):
        if not isinstance(other, NkElement):
            return NotImplemented
        return nk_equal(self, other)

    __hash__ = None

    def __mul__(self, other):
        self._check(other)
        return NkElement(multiply(self.rep, other.rep), self.k)

    def inverse(self) -> NkElement:
        return NkElement(invert(self.rep), self.k)

    def normal_form(self) -> ReducedWord:
        return normal_form(self.rep, self.k)

    def __repr__(self):
        return f"NkElement({str(self.rep)!r}, k={self.k})"


def nk_equal(a: NkElement, b: NkElement) -> bool:
    a._check(b)
    return in_gamma(multiply(a.rep, invert(b.rep)), a.k)


class AutNk:
    """An automorphism of N_k, stored as a lift in End F_n."""

    __slots__ = ("rank", "k", "lift")

    def __init__(self, lift: Endomorphism, k: int):
        if k < 2:
            raise ValueError("Aut N_k needs k >= 2")
        d = int_det(lift.abelianization())
        if d not in (1, -1):
            raise PreconditionError(f"lift does not induce an automorphism: abelianization determinant is {d}")
        self.rank = lift.rank
        self.k = k
        self.lift = lift

    def _check(self, other):
        if (self.rank, self.k) != (other.rank, other.k):
            raise RankError(f"Aut N_{self.k} of rank {self.rank} vs Aut N_{other.k} of rank {other.rank}")

    def image(self, w: ReducedWord) -> NkElement:
        return NkElement(apply(self.lift, w), self.k)

    def __eq__(self, other):
        if not isinstance(other, AutNk):
            return NotImplemented
        self._check(other)
        return all(in_gamma(multiply(u, invert(v)), self.k)
                   for u, v in zip(self.lift.images, other.lift.images))

    __hash__ = None

    def __matmul__(self, other):
        return autnk_compose(self, other)

    def is_identity(self) -> bool:
        return all(in_gamma(multiply(w, ReducedWord._raw(self.rank, (-i,))), self.k)
                   for i, w in enumerate(self.lift.images, 1))

    def project(self, k: int) -> AutNk:
        """Image under the natural map Aut N_self.k -> Aut N_k (k <= self.k)."""
        if k > self.k:
            raise ValueError(f"cannot lift from level {self.k} to {k}")
        return AutNk(self.lift, k)

    def reduced(self) -> AutNk:
        """Same automorphism with each image replaced by its normal form."""
        return AutNk(Endomorphism([normal_form(w, self.k) for w in self.lift.images]), self.k)

    def __repr__(self):
        return f"AutNk(k={self.k}, {self.lift!r})"


def autnk_identity(rank: int, k: int) -> AutNk:
    return AutNk(identity(rank), k)


def phi_k(phi: Endomorphism, k: int) -> AutNk:
    """The automorphism of N_k induced by a 2-connected endomorphism."""
    tc = is_two_connected(phi)
    if not tc:
        raise PreconditionError(f"endomorphism is not 2-connected: abelianization determinant is {tc.det}")
    return AutNk(phi, k)


def autnk_compose(a: AutNk, b: AutNk) -> AutNk:
    """``a o b`` (apply b first)."""
    a._check(b)
    lift = compose(a.lift, b.lift)
    return AutNk(Endomorphism([normal_form(w, a.k) for w in lift.images]), a.k)


def autnk_invert(a: AutNk) -> AutNk:
    """Inverse via the integer inverse on H_1 followed by degree-wise correction."""
    n, k = a.rank, a.k
    inv = int_inverse(a.lift.abelianization())
    images = []
    for j in range(n):
        code = []
        for i in range(n):
            e = inv[i][j]
            code += [i + 1 if e > 0 else -(i + 1)] * abs(e)
        images.append(ReducedWord(n, code))
    b = Endomorphism(images)
    rounds = 0
    for d in range(2, k):
        c = compose(a.lift, b)
        defects = [multiply(w, ReducedWord._raw(n, (-i,))) for i, w in enumerate(c.images, 1)]
        if all(in_gamma(t, d + 1) for t in defects):
            continue
        rounds += 1
        # delta(x_i) = L_i^-1 x_i with L_i representing the degree-d defect
        delta = Endomorphism([
            multiply(invert(lie_word(n, lie_coordinates(t, d).coords, d)), generator(n, i))
            for i, t in enumerate(defects, 1)
        ])
        b = Endomorphism([normal_form(w, k) for w in compose(b, delta).images])
    assert rounds <= max(k - 2, 0)
    out = AutNk(b, k)
    assert autnk_compose(a, out).is_identity(), "inverse correction did not converge"
    return out


def is_aut0(a: AutNk, g: int) -> bool:
    """Whether the stored lift satisfies lift(zeta) = zeta mod Gamma^(k+1).

    This certifies membership in Aut_0 N_k.  A False answer only says the
    certificate fails for this particular lift.
    """
    if a.rank != 2 * g:
        raise RankError(f"genus {g} needs rank {2 * g}, automorphism has rank {a.rank}")
    zeta = boundary_word(g)
    return in_gamma(multiply(apply(a.lift, zeta), invert(zeta)), a.k + 1)


def realize(target: AutNk) -> Endomorphism:
    """A 2-connected endomorphism of F_n inducing ``target`` on N_k.

    Every lift of an automorphism of N_k is 2-connected, so the stored lift
    itself is a preimage.
    """
    lift = target.lift
    if not is_two_connected(lift):
        raise PreconditionError("stored lift is not 2-connected")
    assert phi_k(lift, target.k) == target
    return lift


def realize_aut0(target: AutNk, g: int) -> Endomorphism:
    if not is_aut0(target, g):
        raise PreconditionError(
            f"zeta-certificate fails for this lift: lift(zeta) zeta^-1 is not in Gamma^{target.k + 1}")
    return realize(target)


_LEVEL = re.compile(r"^\s*#\s*level\s+k\s*=\s*(\d+)\s*$")


def format_autnk(a: AutNk) -> str:
    return f"# level k={a.k}\n" + format_endomorphism(a.lift)


def parse_autnk(text: str) -> AutNk:
    for line in text.splitlines():
        m = _LEVEL.match(line)
        if m:
            return AutNk(parse_endomorphism(text), int(m.group(1)))
    raise ParseError("missing '# level k=<k>' header")
