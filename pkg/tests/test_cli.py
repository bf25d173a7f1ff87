import io
import json
import subprocess
import sys

import pytest

from conftest import DATA
from jcalc.cli import VERBS, run
from jcalc.words import parse_endomorphism, parse_word


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


PSI = DATA / "psi.endo"
ID = DATA / "id.endo"

GOLDEN = {
    ("magnus-rep", "--endo", PSI): (
        "r(1,1) = 1 + x2^-1 x1^-1 - x1 x2 x1^-1 x2^-1 x1^-1\n"
        "r(1,2) = 0\n"
        "r(2,1) = x1^-1 - x2 x1^-1 x2^-1 x1^-1\n"
        "r(2,2) = 1\n"),
    ("abelian-det", "--endo", PSI): (
        "det = 1 + x1^-1 x2^-1 - x1^-1\n"
        "verdict: NOT a free-group automorphism (non-unit determinant); augmentation = 1\n"),
    ("johnson", "--endo", ID, "-k", 3): "x1: 0\nx2: 0\n",
    ("johnson", "--endo", PSI, "-k", 2): "x1: -1·[x1,x2]\nx2: 0\n",
    ("two-connected", "--endo", PSI): "two-connected: yes (det = 1)\n",
    ("solve-acyclic", "--system", DATA / "abelian.sys"): (
        "x1 = g1 g2\nx2 = g3\nunique over 20 random starts: yes\n"),
    ("witt", "--rank", 2, "-k", 3): "witt rank = 2\n[x1,[x1,x2]]\n[[x1,x2],x2]\n",
    ("lcs-degree", "--rank", 2, "--word", "[[x1,x2],x1]"): "lcs degree: 3\n",
    ("lcs-degree", "--rank", 2, "--word", "x1 x1^-1"): "lcs degree: infinite\n",
    ("lie-coords", "--rank", 2, "-k", 2, "--word", "[x1,x2]"): "1·[x1,x2]\n",
    ("fox", "--rank", 2, "--word", "x1 x2 x1 x2^-1 x1^-1"): (
        "d/dx1 = 1 + x1 x2 - x1 x2 x1 x2^-1 x1^-1\nd/dx2 = x1 - x1 x2 x1 x2^-1\n"),
    ("parse", "--rank", 2, "--word", "x1 x1 [x2,x1]"): "x1^2 x2 x1 x2^-1 x1^-1\n",
    ("apply", "--endo", PSI, "--word", "x1 x2"): "x1 x2 x1 x2^-1 x1^-1 x2\n",
    ("aut0", "--endo", DATA / "conj_zeta.endo", "-k", 3, "-g", 1): (
        "Aut0 N_3 (g=1): certificate holds for this lift\n"),
    ("aut0", "--endo", DATA / "transvection.endo", "-k", 2, "-g", 1): (
        "Aut0 N_2 (g=1): certificate holds for this lift\n"),
    ("phi", "--endo", PSI, "-k", 2): (
        "# level k=2\nx1 -> x1 x2 x1 x2^-1 x1^-1\nx2 -> x2\n# identity of N_2: yes\n"),
}


@pytest.mark.parametrize("argv", list(GOLDEN), ids=lambda a: " ".join(str(x) for x in a[:1] + a[2:3]))
def test_golden(argv):
    code, out, err = call(*argv)
    assert (code, out, err) == (0, GOLDEN[argv], "")


def test_deterministic():
    argv = ("solve-acyclic", "--system", DATA / "commutator.sys", "--format", "structured")
    assert call(*argv) == call(*argv)


def test_selftest_passes():
    code, out, _ = call("selftest")
    assert code == 0
    assert out.splitlines()[-1] == "9/9 checks passed"
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


@pytest.mark.parametrize("argv,code,fragment", [
    (("johnson", "--endo", PSI, "-k", 3), 1, "filtration level 2"),
    (("phi", "--endo", DATA / "psi.endo", "-k", 3, "--rank", 2), 0, ""),
    (("parse", "--rank", 2, "--word", "x1 ^"), 2, "column"),
    (("parse", "--rank", 2, "--word", "x3"), 2, "x3"),
    (("parse", "--word", "x1"), 2, "--rank"),
    (("johnson", "--endo", PSI), 2, "-k"),
    (("apply", "--word", "x1"), 2, "--endo"),
    (("compose", "--endo", PSI), 2, "two or more"),
    (("magnus-rep", "--endo", DATA / "missing.endo"), 2, "cannot read"),
    (("phi", "--endo", PSI, "-k", 1), 2, "k >= 2"),
    (("aut0", "--endo", PSI, "-k", 2, "-g", 2), 2, "genus 2"),
    (("nonsense",), 2, ""),
])
def test_exit_codes(argv, code, fragment):
    got, out, err = call(*argv)
    assert got == code
    assert fragment in err


def test_parse_error_names_line(tmp_path):
    bad = tmp_path / "bad.endo"
    bad.write_text("x1 -> x1\nx2 -> x2 )\n")
    code, _, err = call("magnus-rep", "--endo", bad)
    assert code == 2 and "line 2" in err and str(bad) in err


def test_precondition_exit_one(tmp_path):
    sq = tmp_path / "sq.endo"
    sq.write_text("x1 -> x1^2\nx2 -> x2\n")
    code, _, err = call("abelian-det", "--endo", sq)
    assert code == 1 and "determinant is 2" in err


def test_structured_matches_text():
    code, out, _ = call("abelian-det", "--endo", PSI, "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"verb", "inputs", "result", "diagnostics"}
    assert doc["verb"] == "abelian-det" and doc["diagnostics"] == []
    assert doc["result"]["det"] == [[1, [0, 0]], [1, [-1, -1]], [-1, [-1, 0]]]
    assert doc["result"]["unit"] is False and doc["result"]["augmentation"] == 1


def test_structured_errors_are_documents():
    code, out, _ = call("johnson", "--endo", PSI, "-k", 3, "--format", "structured")
    doc = json.loads(out)
    assert code == 1 and doc["result"] is None and "filtration level 2" in doc["diagnostics"][0]


@pytest.mark.parametrize("verb", sorted(VERBS))
def test_every_verb_has_structured_output(verb):
    args = {
        "parse": ["--rank", 2, "--word", "[x1,x2]"],
        "apply": ["--endo", PSI, "--word", "x1"],
        "compose": ["--endo", PSI, "--endo", PSI],
        "fox": ["--rank", 2, "--word", "x1 x2"],
        "magnus-rep": ["--endo", PSI],
        "abelian-det": ["--endo", PSI],
        "two-connected": ["--endo", PSI],
        "lcs-degree": ["--rank", 2, "--word", "[x1,x2]"],
        "lie-coords": ["--rank", 2, "-k", 2, "--word", "[x1,x2]"],
        "johnson": ["--endo", PSI, "-k", 2],
        "refined-johnson": ["--endo", DATA / "level3.endo", "-k", 3],
        "phi": ["--endo", PSI, "-k", 3],
        "aut0": ["--endo", PSI, "-k", 2, "-g", 1],
        "solve-acyclic": ["--system", DATA / "abelian.sys"],
        "witt": ["--rank", 3, "-k", 3],
        "selftest": [],
    }[verb]
    code, out, _ = call(verb, *args, "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["verb"] == verb and doc["result"] is not None


def test_printed_values_round_trip(tmp_path):
    code, out, _ = call("compose", "--endo", PSI, "--endo", DATA / "transvection.endo")
    assert code == 0
    phi = parse_endomorphism(out)
    f = tmp_path / "c.endo"
    f.write_text(out)
    assert call("compose", "--endo", f, "--endo", ID)[1] == out
    code, out, _ = call("parse", "--rank", 2, "--word", "[[x1,x2],x2]^2")
    assert parse_word(out.strip(), 2) == parse_word("[[x1,x2],x2]^2", 2)
    assert phi.rank == 2


def test_phi_output_is_an_autnk_file(tmp_path):
    from jcalc.nilpotent import parse_autnk, phi_k
    code, out, _ = call("phi", "--endo", PSI, "-k", 3)
    text = "\n".join(line for line in out.splitlines() if "identity" not in line)
    a = parse_autnk(text)
    assert a == phi_k(parse_endomorphism(PSI.read_text()), 3)


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "jcalc.cli", "witt", "--rank", "2", "-k", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "witt rank = 1\n[x1,x2]\n"
