"""Words in the free group F_n and endomorphisms of F_n.

A word is stored as a tuple of nonzero signed integers (``+i`` for ``x_i``,
``-i`` for ``x_i^-1``), always freely reduced.  Generators are 1-indexed and
every word carries its rank, so mixing ranks raises instead of silently
embedding.
"""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple, Sequence

from ._kernels import reduce_code
from .errors import ParseError, RankError

__all__ = [
    "Letter", "ReducedWord", "Endomorphism",
    "parse_word", "format_word", "multiply", "invert", "apply", "compose",
    "commutator", "left_normed", "power", "generator", "identity",
    "boundary_word", "parse_endomorphism", "format_endomorphism",
    "read_endomorphism", "exponent_sums",
]


class Letter(NamedTuple):
    gen: int
    sign: int


class ReducedWord:
    """A freely reduced word of F_rank; immutable."""

    __slots__ = ("rank", "code", "_hash")

    def __init__(self, rank: int, code: Iterable[int] = ()):
        code = tuple(code)
        for a in code:
            if a == 0 or abs(a) > rank:
                raise RankError(f"letter {a} out of range for rank {rank}")
        self.rank = rank
        self.code = reduce_code(code)
        self._hash = None

    @classmethod
    def _raw(cls, rank, code):
        # trusted constructor: code is already reduced and in range
        self = object.__new__(cls)
        self.rank = rank
        self.code = code
        self._hash = None
        return self

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(abs(a), 1 if a > 0 else -1) for a in self.code)

    def __len__(self):
        return len(self.code)

    def __bool__(self):
        return bool(self.code)

    def __eq__(self, other):
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return self.rank == other.rank and self.code == other.code

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.code))
        return self._hash

    def __mul__(self, other):
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return multiply(self, other)

    def __pow__(self, k):
        return power(self, k)

    def inverse(self) -> ReducedWord:
        return invert(self)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"ReducedWord({self.rank}, {format_word(self)!r})"


def _check_rank(a, b):
    if a.rank != b.rank:
        raise RankError(f"rank mismatch: {a.rank} vs {b.rank}")


def multiply(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    _check_rank(a, b)
    x, y = a.code, b.code
    # only the junction can cancel
    i = 0
    m = min(len(x), len(y))
    while i < m and x[len(x) - 1 - i] == -y[i]:
        i += 1
    return ReducedWord._raw(a.rank, x[: len(x) - i] + y[i:])


def invert(w: ReducedWord) -> ReducedWord:
    return ReducedWord._raw(w.rank, tuple(-a for a in reversed(w.code)))


def power(w: ReducedWord, k: int) -> ReducedWord:
    if k < 0:
        w, k = invert(w), -k
    out = ReducedWord._raw(w.rank, ())
    for _ in range(k):
        out = multiply(out, w)
    return out


def commutator(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    """``[a, b] = a b a^-1 b^-1``."""
    _check_rank(a, b)
    return ReducedWord(a.rank, a.code + b.code + invert(a).code + invert(b).code)


def left_normed(words: Sequence[ReducedWord]) -> ReducedWord:
    """``[...[[w1, w2], w3], ..., wk]``."""
    out = words[0]
    for w in words[1:]:
        out = commutator(out, w)
    return out


def generator(rank: int, i: int) -> ReducedWord:
    if not 1 <= abs(i) <= rank:
        raise RankError(f"generator {i} out of range for rank {rank}")
    return ReducedWord._raw(rank, (i,))


def exponent_sums(w: ReducedWord) -> list[int]:
    out = [0] * w.rank
    for a in w.code:
        out[abs(a) - 1] += 1 if a > 0 else -1
    return out


def boundary_word(g: int) -> ReducedWord:
    """``prod_{i=1}^g [x_i, x_{g+i}]`` in F_{2g}; the empty word for ``g = 0``."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    rank = 2 * g
    code = []
    for i in range(1, g + 1):
        code += [i, g + i, -i, -(g + i)]
    return ReducedWord(rank, code)


# -- text form -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<gen>[xg])(?P<idx>\d+)|(?P<int>-?\d+)|(?P<sym>[\[\](),*^]))")


class _Parser:
    """Recursive-descent parser for the word grammar.

    ``resolve(kind, index, pos)`` maps a generator atom to a signed-int
    letter; it raises ParseError/RankError for forbidden atoms.
    """

    def __init__(self, text, resolve):
        self.text = text
        self.resolve = resolve
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            start = m.start(m.lastgroup)
            if m.group("gen"):
                self.tokens.append(("gen", (m.group("gen"), int(m.group("idx"))), start))
            elif m.group("int") is not None:
                self.tokens.append(("int", int(m.group("int")), start))
            else:
                self.tokens.append((m.group("sym"), None, start))
            pos = m.end()
        self.tokens.append(("end", None, len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            got = "end of input" if tok[0] == "end" else repr(self.text[tok[2]:tok[2] + 8].split()[0])
            raise ParseError(f"expected {kind!r}, got {got}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        code = self.word()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {self.text[tok[2]]!r}", self.text, tok[2])
        return code

    def word(self):
        code = list(self.item())
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.i += 1
                code += self.item()
            elif kind in ("gen", "[", "(", "int"):
                code += self.item()
            else:
                return code

    def item(self):
        code = self.atom()
        if self.peek()[0] == "^":
            self.i += 1
            k = self.take("int")[1]
            if k < 0:
                code = [-a for a in reversed(code)]
                k = -k
            code = code * k
        return code

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "gen":
            self.i += 1
            return [self.resolve(val[0], val[1], pos)]
        if kind == "int":
            if val != 1:
                raise ParseError(f"unexpected integer {val}", self.text, pos)
            self.i += 1
            return []
        if kind == "(":
            self.i += 1
            code = self.word()
            self.take(")")
            return code
        if kind == "[":
            self.i += 1
            a = self.word()
            self.take(",")
            b = self.word()
            self.take("]")
            return a + b + [-x for x in reversed(a)] + [-x for x in reversed(b)]
        if kind == "end":
            raise ParseError("unexpected end of input", self.text, pos)
        raise ParseError(f"unexpected {self.text[pos]!r}", self.text, pos)


def parse_code(text: str, resolve) -> list[int]:
    """Parse ``text`` into an unreduced letter sequence using ``resolve``."""
    return _Parser(text, resolve).parse()


def parse_word(text: str, rank: int) -> ReducedWord:
    """Parse a word in ``x1 .. x<rank>``.

    >>> str(parse_word("[x1,x2]", 2))
    'x1 x2 x1^-1 x2^-1'
    """

    def resolve(kind, idx, pos):
        if kind != "x":
            raise ParseError("g-atoms are only allowed in acyclic-system files", text, pos)
        if not 1 <= idx <= rank:
            raise RankError(f"generator x{idx} exceeds rank {rank} (column {pos + 1})")
        return idx

    return ReducedWord(rank, parse_code(text, resolve))


def format_code(code: Sequence[int], names: Sequence[str] | None = None, sep=" ") -> str:
    if not code:
        return "1"
    parts = []
    i = 0
    while i < len(code):
        a = code[i]
        j = i
        while j < len(code) and code[j] == a:
            j += 1
        run = (j - i) * (1 if a > 0 else -1)
        name = names[abs(a) - 1] if names else f"x{abs(a)}"
        parts.append(name if run == 1 else f"{name}^{run}")
        i = j
    return sep.join(parts)


def format_word(w: ReducedWord) -> str:
    return format_code(w.code)


# -- endomorphisms -------------------------------------------------------

class Endomorphism:
    """An endomorphism of F_n given by the images of the generators."""

    __slots__ = ("rank", "images", "_inv")

    def __init__(self, images: Sequence[ReducedWord]):
        images = tuple(images)
        if not images:
            raise RankError("an endomorphism needs at least one generator")
        rank = len(images)
        for w in images:
            if not isinstance(w, ReducedWord):
                raise TypeError(f"expected ReducedWord, got {type(w).__name__}")
            if w.rank != rank:
                raise RankError(f"image of rank {w.rank} in an endomorphism of F_{rank}")
        self.rank = rank
        self.images = images
        self._inv = None

    @classmethod
    def from_strings(cls, texts: Sequence[str]) -> Endomorphism:
        return cls([parse_word(t, len(texts)) for t in texts])

    def __call__(self, w: ReducedWord) -> ReducedWord:
        return apply(self, w)

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Endomorphism([" + ", ".join(repr(str(w)) for w in self.images) + "])"

    def abelianization(self) -> list[list[int]]:
        """Integer matrix whose column j is the exponent-sum vector of the image of x_j."""
        cols = [exponent_sums(w) for w in self.images]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]


def identity(rank: int) -> Endomorphism:
    return Endomorphism([ReducedWord._raw(rank, (i,)) for i in range(1, rank + 1)])


def apply(phi: Endomorphism, w: ReducedWord) -> ReducedWord:
    if phi.rank != w.rank:
        raise RankError(f"rank mismatch: endomorphism of F_{phi.rank}, word of rank {w.rank}")
    if phi._inv is None:
        phi._inv = tuple(invert(v).code for v in phi.images)
    pos, neg = phi.images, phi._inv
    code = []
    for a in w.code:
        code.extend(pos[a - 1].code if a > 0 else neg[-a - 1])
    return ReducedWord._raw(phi.rank, reduce_code(code))


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """``phi o psi``: first psi, then phi."""
    if phi.rank != psi.rank:
        raise RankError(f"rank mismatch: {phi.rank} vs {psi.rank}")
    return Endomorphism([apply(phi, w) for w in psi.images])


_ENDO_LINE = re.compile(r"^\s*x(\d+)\s*->\s*(.*?)\s*$")


def parse_endomorphism(text: str) -> Endomorphism:
    """Parse the ``x<i> -> <word>`` line format (``#`` starts a comment)."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _ENDO_LINE.match(line)
        if m is None:
            raise ParseError("expected 'x<i> -> <word>'", raw, line=lineno)
        i = int(m.group(1))
        if i in entries:
            raise ParseError(f"x{i} defined twice", raw, line=lineno)
        entries[i] = (m.group(2), lineno, m.start(2))
    n = len(entries)
    if n == 0:
        raise ParseError("no generator images found")
    missing = [i for i in range(1, n + 1) if i not in entries]
    if missing:
        raise ParseError(f"generators must be x1..x{n}; missing x{missing[0]}")
    images = []
    for i in range(1, n + 1):
        body, lineno, col = entries[i]
        try:
            images.append(parse_word(body, n))
        except ParseError as e:
            pos = None if e.pos is None else e.pos + col
            raise ParseError(e.message, body, pos, lineno) from None
        except RankError as e:
            raise RankError(f"{e} on line {lineno}") from None
    return Endomorphism(images)


def format_endomorphism(phi: Endomorphism) -> str:
    return "".join(f"x{i} -> {format_word(w)}\n" for i, w in enumerate(phi.images, 1))


def read_endomorphism(path) -> Endomorphism:
    with open(path, encoding="utf-8") as fh:
        return parse_endomorphism(fh.read())
