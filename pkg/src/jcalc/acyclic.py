"""Acyclic systems of equations over free nilpotent groups.

A system ``x_i = w_i(x_1..x_m)`` over a group N is acyclic when every w_i
has zero net exponent in each variable.  Over N = F_p / Gamma^(c+1) (the
free nilpotent group of class c; class c means Gamma^(c+1) is trivial)
substitution is a contraction along the lower central series: inputs that
agree modulo Gamma^j give outputs agreeing modulo Gamma^(j+1).  So c rounds
of iteration from any starting point reach the unique solution.

Mixed words use letters 1..p for g_1..g_p and p+1..p+m for x_1..x_m.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import NotStabilized, ParseError, PreconditionError, RankError
from .magnus import in_gamma
from .nilpotent import normal_form
from .words import ReducedWord, format_code, invert, multiply, parse_code

__all__ = [
    "SystemWord", "AcyclicSystem", "NilpotentSolution",
    "is_acyclic", "parse_system_word", "evaluate", "solve", "verify_uniqueness",
    "parse_system", "format_system", "read_system",
]


@dataclass(frozen=True)
class SystemWord:
    """A word in coefficient generators g_1..g_p and variables x_1..x_m."""

    p: int
    m: int
    word: ReducedWord

    def __post_init__(self):
        if self.word.rank != self.p + self.m:
            raise RankError(f"mixed word of rank {self.word.rank}, expected {self.p + self.m}")

    def names(self):
        return [f"g{i}" for i in range(1, self.p + 1)] + [f"x{j}" for j in range(1, self.m + 1)]

    def __str__(self):
        return format_code(self.word.code, self.names())


def parse_system_word(text: str, p: int, m: int) -> SystemWord:
    def resolve(kind, idx, pos):
        if kind == "g":
            if not 1 <= idx <= p:
                raise RankError(f"coefficient generator g{idx} exceeds p={p} (column {pos + 1})")
            return idx
        if not 1 <= idx <= m:
            raise RankError(f"variable x{idx} exceeds m={m} (column {pos + 1})")
        return p + idx

    return SystemWord(p, m, ReducedWord(p + m, parse_code(text, resolve)))


def is_acyclic(w: SystemWord, m: int | None = None) -> bool:
    """Whether every variable has zero net exponent in ``w``."""
    m = w.m if m is None else m
    sums = [0] * m
    for a in w.word.code:
        j = abs(a) - w.p
        if j >= 1:
            sums[j - 1] += 1 if a > 0 else -1
    return not any(sums)


@dataclass(frozen=True)
class AcyclicSystem:
    """``x_i = equations[i-1]`` over N = F_p / Gamma^(c+1)."""

    m: int
    p: int
    c: int
    equations: tuple[SystemWord, ...]

    def __post_init__(self):
        if len(self.equations) != self.m:
            raise ValueError(f"{self.m} variables need {self.m} equations, got {len(self.equations)}")
        if self.c < 1:
            raise ValueError("nilpotency class must be >= 1")
        for i, w in enumerate(self.equations, 1):
            if (w.p, w.m) != (self.p, self.m):
                raise RankError(f"equation {i} uses a different alphabet")
            if not is_acyclic(w):
                raise PreconditionError(f"equation for x{i} is not acyclic: {w}")

    @property
    def level(self) -> int:
        """N = F_p / Gamma^level."""
        return self.c + 1


@dataclass(frozen=True)
class NilpotentSolution:
    p: int
    c: int
    values: tuple[ReducedWord, ...]

    def __eq__(self, other):
        if not isinstance(other, NilpotentSolution):
            return NotImplemented
        return (self.p, self.c) == (other.p, other.c) and all(
            in_gamma(multiply(a, invert(b)), self.c + 1) for a, b in zip(self.values, other.values))

    __hash__ = None

    def text(self, i: int) -> str:
        return format_code(self.values[i].code, [f"g{j}" for j in range(1, self.p + 1)])

    def __str__(self):
        return "\n".join(f"x{i} = {self.text(i - 1)}" for i in range(1, len(self.values) + 1))


def evaluate(w: SystemWord, values: Sequence[ReducedWord]) -> ReducedWord:
    """Substitute word values (rank p) for the variables of ``w``."""
    p = w.p
    code = []
    for a in w.word.code:
        j = abs(a)
        if j <= p:
            code.append(a)
        elif a > 0:
            code.extend(values[j - p - 1].code)
        else:
            code.extend(invert(values[j - p - 1]).code)
    return ReducedWord(p, code)


def _step(sys, values):
    return tuple(normal_form(evaluate(w, values), sys.level) for w in sys.equations)


def solve(sys: AcyclicSystem, seed: Sequence[ReducedWord] | None = None) -> NilpotentSolution:
    """Iterate the system ``c`` times from ``seed`` (default: all trivial), then verify."""
    if seed is None:
        values = tuple(ReducedWord(sys.p) for _ in range(sys.m))
    else:
        values = tuple(seed)
        if len(values) != sys.m or any(v.rank != sys.p for v in values):
            raise RankError(f"seed must be {sys.m} words of rank {sys.p}")
    for _ in range(sys.c):
        values = _step(sys, values)
    check = _step(sys, values)
    for i, (a, b) in enumerate(zip(values, check), 1):
        if not in_gamma(multiply(a, invert(b)), sys.level):
            raise NotStabilized(f"x{i} is not fixed after {sys.c} iterations (class {sys.c})")
    return NilpotentSolution(sys.p, sys.c, values)


def verify_uniqueness(sys: AcyclicSystem, trials: int = 20, seed: int = 0, max_len: int = 6) -> bool:
    """Run the iteration from ``trials`` random starting points; True if all agree."""
    rng = random.Random(seed)
    ref = solve(sys)
    for _ in range(trials):
        start = []
        for _ in range(sys.m):
            length = rng.randint(0, max_len)
            start.append(ReducedWord(sys.p, [rng.choice([1, -1]) * rng.randint(1, sys.p) for _ in range(length)]))
        if solve(sys, start) != ref:
            return False
    return True


_HEADER = re.compile(r"^\s*vars\s+m\s*=\s*(\d+)\s+coeff\s+p\s*=\s*(\d+)\s+class\s*=\s*(\d+)\s*$")
_EQ = re.compile(r"^\s*x(\d+)\s*=\s*(.*?)\s*$")


def parse_system(text: str) -> AcyclicSystem:
    header = None
    eqs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if header is None:
            mh = _HEADER.match(line)
            if mh is None:
                raise ParseError("expected header 'vars m=<m> coeff p=<p> class=<c>'", raw, line=lineno)
            header = tuple(int(x) for x in mh.groups())
            continue
        me = _EQ.match(line)
        if me is None:
            raise ParseError("expected 'x<i> = <word>'", raw, line=lineno)
        i = int(me.group(1))
        if i in eqs:
            raise ParseError(f"x{i} defined twice", raw, line=lineno)
        m, p, _ = header
        try:
            eqs[i] = parse_system_word(me.group(2), p, m)
        except ParseError as e:
            pos = None if e.pos is None else e.pos + me.start(2)
            raise ParseError(e.message, raw, pos, lineno) from None
        except RankError as e:
            raise RankError(f"{e} on line {lineno}") from None
    if header is None:
        raise ParseError("empty system file")
    m, p, c = header
    missing = [i for i in range(1, m + 1) if i not in eqs]
    if missing or len(eqs) != m:
        raise ParseError(f"system needs exactly one equation for each of x1..x{m}")
    return AcyclicSystem(m, p, c, tuple(eqs[i] for i in range(1, m + 1)))


def format_system(sys: AcyclicSystem) -> str:
    lines = [f"vars m={sys.m} coeff p={sys.p} class={sys.c}"]
    lines += [f"x{i} = {w}" for i, w in enumerate(sys.equations, 1)]
    return "\n".join(lines) + "\n"


def read_system(path) -> AcyclicSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())
