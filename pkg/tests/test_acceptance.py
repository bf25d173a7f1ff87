"""Acceptance criteria, each run at its stated tolerance and time limit.

Every criterion prints one ``PASS``/``FAIL`` line (collected into the pytest
terminal summary; also printed when run as ``python3 tests/test_acceptance.py``).
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from families import insertion_family  # noqa: E402
from oracles import all_reduced_words, oracle_in_gamma  # noqa: E402

from jcalc._intmat import rank  # noqa: E402
from jcalc.acyclic import parse_system, solve, verify_uniqueness  # noqa: E402
from jcalc.foxrep import automorphism_obstruction, crossed_check, fox_derivative, magnus_rep  # noqa: E402
from jcalc.groupring import GroupRingElem, LaurentPoly, is_unit  # noqa: E402
from jcalc.johnson import (  # noqa: E402
    check_action_trivial, filtration_level, johnson, refined_johnson, refined_kernel_level,
)
from jcalc.magnus import LieVector, in_gamma, lyndon_bracket_word, lyndon_words, witt_rank  # noqa: E402
from jcalc.nilpotent import autnk_compose, autnk_invert, is_aut0, phi_k, realize, realize_aut0  # noqa: E402
from jcalc.sampling import (  # noqa: E402
    insertion, random_automorphism, random_autnk, random_commutator, random_gamma, random_level_k,
    random_word, random_zeta_certified,
)
from jcalc.words import Endomorphism, ReducedWord, apply, boundary_word, invert, multiply, parse_word  # noqa: E402

RESULTS = []

PSI = Endomorphism([parse_word("x1 x2 x1 x2^-1 x1^-1", 2), parse_word("x2", 2)])


def _g(text, c=1):
    return GroupRingElem.word(parse_word(text, 2), c)


def c1_magnus_rep():
    m = magnus_rep(PSI)
    want = [[1 + _g("x2^-1 x1^-1") - _g("x1 x2 x1^-1 x2^-1 x1^-1"), GroupRingElem.zero(2)],
            [_g("x1^-1") - _g("x2 x1^-1 x2^-1 x1^-1"), GroupRingElem.one(2)]]
    ok = all(m[i, j] == want[i][j] for i in range(2) for j in range(2))
    return ok, "r(psi) matches all four entries" if ok else f"got {m}"


def c2_determinant():
    ob = automorphism_obstruction(PSI)
    want = LaurentPoly.monomial((0, 0)) + LaurentPoly.monomial((-1, -1)) - LaurentPoly.monomial((-1, 0))
    ok = ob.det == want and not is_unit(ob.det) and not ob.unit and ob.verdict.startswith("NOT")
    return ok, f"det = {ob.det}; {ob.verdict}"


def c3_johnson():
    jv = johnson(PSI, 2)
    ok = jv.values == (LieVector(2, 2, (-1,)), LieVector(2, 2, (0,)))
    return ok, str(jv).replace("\n", "; ")


def c4_acyclic():
    sys_ = parse_system("vars m=2 coeff p=3 class=1\n"
                        "x1 = g1 x1 g2 x2 x1^-1 x2^-1\n"
                        "x2 = x1 g3 x1^-1\n")
    sol = solve(sys_)
    unique = verify_uniqueness(sys_, 20, seed=0)
    ok = sol.text(0) == "g1 g2" and sol.text(1) == "g3" and unique
    return ok, f"{sol}".replace("\n", ", ") + f"; unique over 20 seeds: {unique}"


def c5_fox_identity():
    rng = random.Random(5)
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 4)
        w = random_word(rng, n, 40)
        total = GroupRingElem.zero(n)
        for i in range(1, n + 1):
            total = total + fox_derivative(w, i) * (GroupRingElem.word(ReducedWord(n, (i,))) - 1)
        bad += total != GroupRingElem.word(w) - 1
    return bad == 0, f"{200 - bad}/200 words satisfy the identity"


def c6_crossed():
    rng = random.Random(6)

    def pick(n):
        if rng.random() < 0.5:
            return random_automorphism(rng, n, rng.randint(1, 4))[0]
        return insertion(n, rng.randint(1, n), random_commutator(rng, n, rng.randint(2, 3), 2))

    good = 0
    for _ in range(50):
        n = rng.randint(2, 3)
        good += crossed_check(pick(n), pick(n))
    return good == 50, f"{good}/50 pairs satisfy the crossed-homomorphism law"


def c7_oracle():
    total = agree = 0
    for code in all_reduced_words(2, 8):
        w = ReducedWord(2, code)
        for k in range(1, 5):
            total += 1
            agree += in_gamma(w, k) == oracle_in_gamma(code, k)
    return agree == total, f"{agree}/{total} (word, k) cases agree with the collection oracle"


def c8_action_trivial():
    rng = random.Random(8)
    good = 0
    for t in range(100):
        k = 2 + t % 2
        phi = random_level_k(rng, 2, k)
        w = random_gamma(rng, 2, k, 2, 2)
        assert filtration_level(phi, k) >= k and in_gamma(w, k)
        good += check_action_trivial(phi, w, k)
    return good == 100, f"{good}/100 sampled (phi, w) act trivially mod Gamma^(2k-1)"


def c9_refinement():
    cases = p1_ok = kernel_ok = 0
    for k in (2, 3):
        for phi in insertion_family(k):
            cases += 1
            p1_ok += refined_johnson(phi, k).p1() == johnson(phi, k)
            kernel_ok += refined_kernel_level(phi, k) == (filtration_level(phi, 2 * k - 1) >= 2 * k - 1)
    rows = [refined_johnson(insertion(2, i, lyndon_bracket_word(u, 2)), 3).coordinates()
            for i in (1, 2) for j in (3, 4) for u in lyndon_words(2, j)]
    r = rank(rows)
    target = 2 * (witt_rank(2, 3) + witt_rank(2, 4))
    ok = p1_ok == kernel_ok == cases and r == target == 10
    return ok, f"p1 {p1_ok}/{cases}, kernel {kernel_ok}/{cases}, span rank {r} (expected {target})"


def c10_surjectivity():
    rng = random.Random(10)
    good = certified = 0
    for _ in range(20):
        target = random_autnk(rng, 2, 3)
        if is_aut0(target, 1):
            certified += 1
            lift = realize_aut0(target, 1)
        else:
            lift = realize(target)
        good += phi_k(lift, 3) == target
    zgood = 0
    for _ in range(20):
        target = random_zeta_certified(rng, 1, 3)
        zgood += phi_k(realize_aut0(target, 1), 3) == target
    ok = good == 20 and zgood == 20
    return ok, (f"{good}/20 random targets round-trip ({certified} zeta-certified); "
                f"{zgood}/20 zeta-certified targets round-trip through realize_aut0")


def c11_inversion():
    rng = random.Random(11)
    good = 0
    for t in range(20):
        k = 2 + t % 3
        a = random_autnk(rng, 2, k)
        good += autnk_compose(a, autnk_invert(a)).is_identity()
    return good == 20, f"{good}/20 a . a^-1 = id (k = 2, 3, 4)"


def c12_certificate():
    rng = random.Random(12)
    zeta = boundary_word(1)
    good = 0
    for t in range(20):
        k = 2 + t % 2
        a, b = random_zeta_certified(rng, 1, k), random_zeta_certified(rng, 1, k)
        assert is_aut0(a, 1) and is_aut0(b, 1)
        lift = autnk_compose(a, b).lift
        good += in_gamma(multiply(apply(lift, zeta), invert(zeta)), k + 1)
    return good == 20, f"{good}/20 composites keep lift(zeta) zeta^-1 in Gamma^(k+1)"


CRITERIA = [
    (1, "magnus representation of psi", c1_magnus_rep, 1),
    (2, "abelianized determinant of psi", c2_determinant, 1),
    (3, "J_2(psi)", c3_johnson, 1),
    (4, "abelian acyclic system", c4_acyclic, 1),
    (5, "Fox fundamental identity", c5_fox_identity, 5),
    (6, "crossed-homomorphism law", c6_crossed, 30),
    (7, "Gamma^k membership vs collection oracle", c7_oracle, 60),
    (8, "action triviality mod Gamma^(2k-1)", c8_action_trivial, 60),
    (9, "refinement exactness and span rank", c9_refinement, 120),
    (10, "Phi_3 surjectivity round trip", c10_surjectivity, 60),
    (11, "Aut N_k inversion", c11_inversion, 60),
    (12, "zeta-certificate multiplicativity", c12_certificate, 30),
]


def run_criterion(num, name, fn, limit):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failure of the criterion
        ok, detail = False, f"{type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    timely = dt < limit
    passed = ok and timely
    line = (f"{'PASS' if passed else 'FAIL'} criterion {num:2d} ({name}): {detail} "
            f"[{dt:.2f}s, limit {limit}s{'' if timely else ', TOO SLOW'}]")
    RESULTS.append(line)
    print(line)
    return passed, line


@pytest.mark.parametrize("num,name,fn,limit", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, name, fn, limit):
    passed, line = run_criterion(num, name, fn, limit)
    assert passed, line


if __name__ == "__main__":
    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
