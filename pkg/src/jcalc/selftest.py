"""Built-in checks of the worked examples (run by ``jcalc selftest``)."""

from __future__ import annotations

from .acyclic import parse_system, solve, verify_uniqueness
from .foxrep import automorphism_obstruction, is_two_connected, magnus_rep
from .groupring import GroupRingElem
from .johnson import filtration_level, johnson, refined_johnson
from .magnus import lie_coordinates
from .nilpotent import phi_k
from .words import Endomorphism, boundary_word, parse_word

PSI = ("x1 x2 x1 x2^-1 x1^-1", "x2")

ABELIAN_SYSTEM = """\
vars m=2 coeff p=3 class=1
x1 = g1 x1 g2 x2 x1^-1 x2^-1
x2 = x1 g3 x1^-1
"""


def _gr(*terms):
    out = GroupRingElem.zero(2)
    for c, text in terms:
        out = out + GroupRingElem.word(parse_word(text, 2), c)
    return out


def _checks():
    psi = Endomorphism.from_strings(PSI)

    def magnus_matrix():
        m = magnus_rep(psi)
        want = [
            [_gr((1, "1"), (1, "x2^-1 x1^-1"), (-1, "x1 x2 x1^-1 x2^-1 x1^-1")), _gr()],
            [_gr((1, "x1^-1"), (-1, "x2 x1^-1 x2^-1 x1^-1")), _gr((1, "1"))],
        ]
        return all(m[i, j] == want[i][j] for i in range(2) for j in range(2)), ""

    def determinant():
        ob = automorphism_obstruction(psi)
        return str(ob.det) == "1 + x1^-1 x2^-1 - x1^-1" and not ob.unit, f"det = {ob.det}"

    def two_connected():
        tc = is_two_connected(psi)
        return bool(tc) and tc.det == 1, f"det = {tc.det}"

    def level_two():
        return filtration_level(psi, 5) == 2 and phi_k(psi, 2).is_identity(), ""

    def johnson_two():
        jv = johnson(psi, 2)
        return jv.values[0].coords == (-1,) and jv.values[1].coords == (0,), str(jv).replace("\n", "; ")

    def refinement_two():
        rv = refined_johnson(psi, 2)
        return rv.p1() == johnson(psi, 2), ""

    def lie_sign():
        return lie_coordinates(parse_word("[x1,x2]", 2), 2).coords == (1,), ""

    def acyclic():
        sys_ = parse_system(ABELIAN_SYSTEM)
        sol = solve(sys_)
        ok = sol.text(0) == "g1 g2" and sol.text(1) == "g3" and verify_uniqueness(sys_, 20)
        return ok, str(sol).replace("\n", "; ")

    def boundary():
        return (str(boundary_word(1)) == "x1 x2 x1^-1 x2^-1"
                and str(boundary_word(2)) == "x1 x3 x1^-1 x3^-1 x2 x4 x2^-1 x4^-1"), ""

    return [
        ("magnus representation of psi", magnus_matrix),
        ("abelianized determinant of psi is a non-unit", determinant),
        ("psi is 2-connected", two_connected),
        ("psi lies in filtration level 2", level_two),
        ("J_2(psi) = x1* (x) (x2 ^ x1)", johnson_two),
        ("first projection of refined J_2(psi) is J_2(psi)", refinement_two),
        ("[x1,x2] has coordinate +1 on the Lyndon word 12", lie_sign),
        ("abelian acyclic system solution", acyclic),
        ("boundary words for g = 1, 2", boundary),
    ]


def run_selftest():
    """Return ``[(name, ok, detail)]`` in a fixed order."""
    results = []
    for name, fn in _checks():
        try:
            ok, detail = fn()
        except Exception as e:  # report, never abort the run
            ok, detail = False, f"{type(e).__name__}: {e}"
        results.append((name, bool(ok), detail))
    return results
