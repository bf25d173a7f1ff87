"""``jcalc`` command-line interface.

Exit status: 0 on success, 1 when a mathematical precondition fails, 2 on
usage or input-parsing errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .acyclic import read_system, solve, verify_uniqueness
from .errors import JcalcError, NotStabilized, ParseError, PreconditionError, RankError
from .foxrep import automorphism_obstruction, fox_derivative, is_two_connected, magnus_rep
from .groupring import GroupRingElem, LaurentPoly
from .johnson import filtration_level, johnson, refined_johnson
from .magnus import (
    LieVector, TruncSeries, lcs_degree, lie_coordinates, lyndon_bracket_text, lyndon_words, witt_rank,
)
from .nilpotent import format_autnk, is_aut0, phi_k
from .words import (
    Endomorphism, ReducedWord, apply, compose, format_endomorphism, parse_word, read_endomorphism,
)


class UsageError(JcalcError):
    pass


# -- structured encodings ------------------------------------------------

def _gr_terms(e: GroupRingElem):
    return [[c, list(w)] for w, c in e.sorted_terms()]


def _laurent_terms(p: LaurentPoly):
    return [[c, list(e)] for e, c in p.sorted_terms()]


def _series_terms(s: TruncSeries):
    return [[list(m), c] for m, c in s.sorted_terms()]


def _lie(v: LieVector):
    return {"degree": v.degree, "basis": [list(u) for u in v.basis], "coords": list(v.coords)}


def _word(w: ReducedWord):
    return {"text": str(w), "letters": list(w.code)}


def _endo(phi: Endomorphism):
    return [str(w) for w in phi.images]


# -- helpers -------------------------------------------------------------

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            flag = {"k": "-k", "g": "-g"}.get(name, "--" + name)
            raise UsageError(f"{args.verb} requires {flag}")


def _load_endo(path) -> Endomorphism:
    try:
        return read_endomorphism(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except (ParseError, RankError) as e:
        raise ParseError(f"{path}: {e}") from None


def _one_endo(args) -> Endomorphism:
    if not args.endo:
        raise UsageError(f"{args.verb} requires --endo FILE")
    if len(args.endo) != 1:
        raise UsageError(f"{args.verb} takes exactly one --endo")
    return _load_endo(args.endo[0])


def _word_arg(args, rank) -> ReducedWord:
    _need(args, "word")
    return parse_word(args.word, rank)


def _rank_arg(args) -> int:
    _need(args, "rank")
    if args.rank < 1:
        raise UsageError("--rank must be >= 1")
    return args.rank


# -- verbs: each returns (text lines, structured result) -----------------

def cmd_parse(args):
    w = _word_arg(args, _rank_arg(args))
    return [str(w)], _word(w)


def cmd_apply(args):
    phi = _one_endo(args)
    w = _word_arg(args, phi.rank)
    out = apply(phi, w)
    return [str(out)], _word(out)


def cmd_compose(args):
    if not args.endo or len(args.endo) < 2:
        raise UsageError("compose requires two or more --endo FILE (applied right to left)")
    endos = [_load_endo(p) for p in args.endo]
    out = endos[-1]
    for phi in reversed(endos[:-1]):
        out = compose(phi, out)
    return format_endomorphism(out).splitlines(), {"images": _endo(out)}


def cmd_fox(args):
    w = _word_arg(args, _rank_arg(args))
    lines, res = [], []
    for i in range(1, w.rank + 1):
        d = fox_derivative(w, i)
        lines.append(f"d/dx{i} = {d}")
        res.append(_gr_terms(d))
    return lines, {"word": _word(w), "derivatives": res}


def cmd_magnus_rep(args):
    phi = _one_endo(args)
    m = magnus_rep(phi)
    lines = [f"r({i + 1},{j + 1}) = {m[i, j]}" for i in range(m.rows) for j in range(m.cols)]
    return lines, {"matrix": [[_gr_terms(e) for e in row] for row in m.entries]}


def cmd_abelian_det(args):
    phi = _one_endo(args)
    ob = automorphism_obstruction(phi)
    lines = [f"det = {ob.det}", f"verdict: {ob.verdict}; augmentation = {ob.augmentation}"]
    return lines, {
        "det": _laurent_terms(ob.det), "unit": ob.unit, "augmentation": ob.augmentation,
        "verdict": "unit" if ob.unit else "non-unit",
        "matrix": [[_laurent_terms(e) for e in row] for row in ob.matrix.entries],
    }


def cmd_two_connected(args):
    phi = _one_endo(args)
    tc = is_two_connected(phi)
    return [f"two-connected: {'yes' if tc else 'no'} (det = {tc.det})"], {"two_connected": bool(tc), "det": tc.det}


def cmd_lcs_degree(args):
    w = _word_arg(args, _rank_arg(args))
    bound = args.bound if args.bound is not None else 6
    d = lcs_degree(w, bound)
    value = None if d.value == float("inf") else int(d.value)
    return [f"lcs degree: {d}"], {"degree": value, "exact": d.exact, "infinite": value is None, "bound": bound}


def cmd_lie_coords(args):
    _need(args, "k")
    w = _word_arg(args, _rank_arg(args))
    v = lie_coordinates(w, args.k)
    return [str(v)], _lie(v)


def cmd_johnson(args):
    _need(args, "k")
    phi = _one_endo(args)
    jv = johnson(phi, args.k)
    return str(jv).splitlines(), {"k": jv.k, "values": [_lie(v) for v in jv.values], "zero": jv.is_zero()}


def cmd_refined_johnson(args):
    _need(args, "k")
    phi = _one_endo(args)
    rv = refined_johnson(phi, args.k)
    lines = str(rv).splitlines() + [f"p1: {line}" for line in str(rv.p1()).splitlines()]
    return lines, {
        "k": rv.k, "bound": 2 * rv.k - 2,
        "cosets": [_series_terms(s) for s in rv.cosets],
        "p1": [_lie(v) for v in rv.p1().values], "zero": rv.is_zero(),
    }


def cmd_phi(args):
    _need(args, "k")
    phi = _one_endo(args)
    a = phi_k(phi, args.k)
    ident = a.is_identity()
    level = filtration_level(phi, args.k)
    lines = format_autnk(a).splitlines() + [f"# identity of N_{args.k}: {'yes' if ident else 'no'}"]
    return lines, {"k": a.k, "images": _endo(a.lift), "identity": ident, "filtration_level": level}


def cmd_aut0(args):
    _need(args, "k", "g")
    phi = _one_endo(args)
    a = phi_k(phi, args.k)
    ok = is_aut0(a, args.g)
    text = "certificate holds for this lift" if ok else "certificate fails for this lift"
    return [f"Aut0 N_{args.k} (g={args.g}): {text}"], {"certified": ok, "k": args.k, "g": args.g}


def cmd_solve_acyclic(args):
    if args.system is None:
        raise UsageError("solve-acyclic requires --system FILE")
    try:
        sys_ = read_system(args.system)
    except OSError as e:
        raise UsageError(f"cannot read {args.system}: {e.strerror}") from None
    sol = solve(sys_)
    seed = args.seed if args.seed is not None else 0
    unique = verify_uniqueness(sys_, args.trials, seed=seed)
    lines = str(sol).splitlines() + [f"unique over {args.trials} random starts: {'yes' if unique else 'no'}"]
    return lines, {
        "solution": [{"text": sol.text(i), "letters": list(v.code)} for i, v in enumerate(sol.values)],
        "class": sys_.c, "unique": unique, "trials": args.trials, "seed": seed,
    }


def cmd_witt(args):
    _need(args, "k")
    n = _rank_arg(args)
    words = lyndon_words(n, args.k)
    lines = [f"witt rank = {witt_rank(n, args.k)}"] + [lyndon_bracket_text(u) for u in words]
    return lines, {"rank": witt_rank(n, args.k), "lyndon_words": [list(u) for u in words]}


def cmd_selftest(args):
    from .selftest import run_selftest

    results = run_selftest()
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
             for name, ok, detail in results]
    failed = [name for name, ok, _ in results if not ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    res = {"checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in results]}
    if failed:
        raise _SelftestFailed(lines, res)
    return lines, res


class _SelftestFailed(Exception):
    def __init__(self, lines, result):
        super().__init__("selftest failed")
        self.lines = lines
        self.result = result


VERBS = {
    "parse": cmd_parse,
    "apply": cmd_apply,
    "compose": cmd_compose,
    "fox": cmd_fox,
    "magnus-rep": cmd_magnus_rep,
    "abelian-det": cmd_abelian_det,
    "two-connected": cmd_two_connected,
    "lcs-degree": cmd_lcs_degree,
    "lie-coords": cmd_lie_coords,
    "johnson": cmd_johnson,
    "refined-johnson": cmd_refined_johnson,
    "phi": cmd_phi,
    "aut0": cmd_aut0,
    "solve-acyclic": cmd_solve_acyclic,
    "witt": cmd_witt,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jcalc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"jcalc {__version__}")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument("--endo", action="append", metavar="FILE")
        p.add_argument("--word", metavar="STR")
        p.add_argument("--system", metavar="FILE")
        p.add_argument("-k", type=int)
        p.add_argument("-g", type=int)
        p.add_argument("--rank", type=int)
        p.add_argument("--bound", type=int)
        p.add_argument("--trials", type=int, default=20)
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=["text", "structured"], default="text")
    return parser


def _inputs(args):
    keys = ("endo", "word", "system", "k", "g", "rank", "bound", "seed")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def _emit(args, out, lines, result, diagnostics):
    if args.format == "structured":
        doc = {"verb": args.verb, "inputs": _inputs(args), "result": result, "diagnostics": diagnostics}
        out.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _fail(args, out, err, exc, code):
    if args.format == "structured":
        _emit(args, out, [], None, [f"error: {exc}"])
    err.write(f"jcalc {args.verb}: error: {exc}\n")
    return code


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        lines, result = VERBS[args.verb](args)
    except _SelftestFailed as e:
        _emit(args, out, e.lines, e.result, ["selftest failed"])
        return 1
    except (PreconditionError, NotStabilized) as e:
        return _fail(args, out, err, e, 1)
    except (UsageError, ParseError, RankError, ValueError) as e:
        return _fail(args, out, err, e, 2)
    _emit(args, out, lines, result, [])
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
