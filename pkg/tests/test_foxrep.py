import random

import pytest
from hypothesis import given, strategies as st

from conftest import words
from jcalc.errors import PreconditionError, RankError
from jcalc.foxrep import (
    automorphism_obstruction, crossed_check, fox_derivative, fox_jacobian, is_two_connected, magnus_rep,
)
from jcalc.groupring import GroupRingElem, LaurentPoly, augmentation, bar, is_unit
from jcalc.sampling import insertion, nielsen_moves, random_automorphism, random_commutator
from jcalc.words import Endomorphism, identity, multiply, parse_word


def g(text, c=1, rank=2):
    return GroupRingElem.word(parse_word(text, rank), c)


def w2(text):
    return parse_word(text, 2)


class TestFox:
    def test_generators(self):
        assert fox_derivative(w2("x1"), 1) == GroupRingElem.one(2)
        assert fox_derivative(w2("x1^-1"), 1) == -g("x1^-1")
        assert fox_derivative(w2("x2"), 1) == GroupRingElem.zero(2)

    def test_psi_image(self):
        d = fox_derivative(w2("x1 x2 x1 x2^-1 x1^-1"), 1)
        assert d == 1 + g("x1 x2") - g("x1 x2 x1 x2^-1 x1^-1")

    def test_out_of_range(self):
        with pytest.raises(RankError):
            fox_derivative(w2("x1"), 3)


class TestMagnusRep:
    def test_psi_matrix(self, psi):
        m = magnus_rep(psi)
        assert m[0, 0] == 1 + g("x2^-1 x1^-1") - g("x1 x2 x1^-1 x2^-1 x1^-1")
        assert m[0, 1] == GroupRingElem.zero(2)
        assert m[1, 0] == g("x1^-1") - g("x2 x1^-1 x2^-1 x1^-1")
        assert m[1, 1] == GroupRingElem.one(2)

    def test_identity(self):
        m = magnus_rep(identity(3))
        for i in range(3):
            for j in range(3):
                assert m[i, j] == GroupRingElem.scalar(3, int(i == j))

    def test_transvection(self):
        m = magnus_rep(Endomorphism.from_strings(["x1 x2", "x2"]))
        assert [[m[i, j] for j in range(2)] for i in range(2)] == [
            [GroupRingElem.one(2), GroupRingElem.zero(2)], [g("x1^-1"), GroupRingElem.one(2)]]

    def test_augmentation_matches_abelianization(self, psi):
        for phi in (psi, Endomorphism.from_strings(["x1^2 x2", "x2^-1 x1"])):
            m = magnus_rep(phi)
            assert [[augmentation(m[i, j]) for j in range(2)] for i in range(2)] == \
                [list(r) for r in phi.abelianization()]

    def test_crossed_examples(self, psi):
        assert crossed_check(identity(2), psi)
        assert crossed_check(psi, psi)


class TestConnectivity:
    def test_examples(self, psi):
        tc = is_two_connected(psi)
        assert tc and tc.det == 1
        tc = is_two_connected(Endomorphism.from_strings(["x1^2", "x2"]))
        assert not tc and tc.det == 2
        for f, _ in nielsen_moves(3):
            assert is_two_connected(f)

    def test_obstruction_psi(self, psi):
        ob = automorphism_obstruction(psi)
        assert not ob.unit
        assert str(ob.det) == "1 + x1^-1 x2^-1 - x1^-1"
        assert ob.augmentation == 1
        assert ob.verdict.startswith("NOT")

    def test_obstruction_identity_and_inner(self):
        ob = automorphism_obstruction(identity(2))
        assert ob.unit and ob.det == LaurentPoly.scalar(2, 1)
        inner = Endomorphism.from_strings(["x1 x1 x1^-1", "x1 x2 x1^-1"])
        ob = automorphism_obstruction(inner)
        assert ob.unit and ob.verdict.startswith("inconclusive")

    def test_obstruction_requires_two_connected(self):
        with pytest.raises(PreconditionError, match="determinant is 2"):
            automorphism_obstruction(Endomorphism.from_strings(["x1^2", "x2"]))


def fundamental_identity_holds(w):
    total = GroupRingElem.zero(w.rank)
    for i in range(1, w.rank + 1):
        total = total + fox_derivative(w, i) * (GroupRingElem.word(parse_word(f"x{i}", w.rank)) - 1)
    return total == GroupRingElem.word(w) - 1


@given(st.integers(1, 4).flatmap(lambda n: words(n, 40)))
def test_fundamental_identity(w):
    assert fundamental_identity_holds(w)


@given(words(3, 15), words(3, 15), st.integers(1, 3))
def test_product_rule(u, v, i):
    lhs = fox_derivative(multiply(u, v), i)
    assert lhs == fox_derivative(u, i) + GroupRingElem.word(u) * fox_derivative(v, i)


@given(st.integers(0, 2**32), st.integers(2, 3))
def test_crossed_homomorphism_law(seed, rank):
    rng = random.Random(seed)

    def pick():
        if rng.random() < 0.5:
            return random_automorphism(rng, rank, rng.randint(1, 3))[0]
        return insertion(rank, rng.randint(1, rank), random_commutator(rng, rank, rng.randint(2, 3), 2))
    assert crossed_check(pick(), pick())


@given(st.lists(words(2, 4), min_size=2, max_size=2))
def test_augmented_rep_invertible_iff_two_connected(images):
    phi = Endomorphism(images)
    m = magnus_rep(phi)
    a = [[augmentation(m[i, j]) for j in range(2)] for i in range(2)]
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    assert (det in (1, -1)) == bool(is_two_connected(phi))


@given(st.integers(0, 2**32), st.integers(1, 6))
def test_automorphisms_have_unit_determinant(seed, length):
    phi, _ = random_automorphism(random.Random(seed), 2, length)
    assert automorphism_obstruction(phi).unit


def test_bar_of_fox_reproduces_rep(psi):
    assert magnus_rep(psi) == fox_jacobian(psi).map(bar)
    assert is_unit(LaurentPoly.monomial((1, -1)))
