"""Text syntax for words, braids, Lie expressions and Kohno elements.

Every printer in the package produces text these parsers read back to an
equal object:

    free words      y1 y2^-1 [y1,y2] g3^2       (commutator [u,v] = u v u^-1 v^-1)
    braids          n=4: s1 s2^-1 A(1,3) [A(1,2),A(2,3)]
    Lie elements    3*[y1,y2] - [[y1,y2],y3] + [y1,y2,y3]   ([a,b,c] = [[a,b],c])
    Kohno elements  B(1,3) + [B(1,2),B(1,3)]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Generic, TypeVar

from .braid import PureBraid, SigmaBraid, a_generator
from .freelie import Alphabet, LieElement, lie_bracket
from .kohno import KohnoElement, kohno_bracket, kohno_generator
from .words import FreeWord

__all__ = [
    "ParseError",
    "parse_word",
    "parse_braid",
    "format_braid",
    "parse_lie",
    "parse_kohno",
]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<pair>[AB]\(\s*\d+\s*,\s*\d+\s*\))|(?P<gen>[a-z]\d+)|(?P<int>\d+)|(?P<op>[\[\](),^*+\-]))"
)


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos}")
        kind = m.lastgroup
        out.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _Stream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.text == text

    def expect(self, text: str) -> None:
        tok = self.take()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r} at {tok.pos}, found {tok.text!r}")

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok.text!r} at {tok.pos}")


# -- group expressions ------------------------------------------------------

G = TypeVar("G")


class _GroupGrammar(Generic[G]):
    """``expr := factor*``, ``factor := atom ('^' int)?``, ``atom := gen | '[' expr ',' expr ']' | '(' expr ')'``."""

    def __init__(self, identity: G, generator: Callable[[_Token], G]):
        self.identity = identity
        self.generator = generator

    def expr(self, s: _Stream) -> G:
        out = self.identity
        while True:
            tok = s.peek()
            if tok is None or (tok.kind == "op" and tok.text in "],)"):
                return out
            if tok.kind == "op" and tok.text == "*":
                s.take()
                continue
            out = out * self.factor(s)

    def factor(self, s: _Stream) -> G:
        x = self.atom(s)
        if s.at("^"):
            s.take()
            sign = 1
            if s.at("-"):
                s.take()
                sign = -1
            tok = s.take()
            if tok.kind != "int":
                raise ParseError(f"expected an exponent at {tok.pos}")
            x = x ** (sign * int(tok.text))
        return x

    def atom(self, s: _Stream) -> G:
        tok = s.take()
        if tok.kind == "op" and tok.text == "[":
            u = self.expr(s)
            s.expect(",")
            v = self.expr(s)
            s.expect("]")
            return u * v * (u ** -1) * (v ** -1)
        if tok.kind == "op" and tok.text == "(":
            x = self.expr(s)
            s.expect(")")
            return x
        if tok.kind == "int" and tok.text == "1":
            return self.identity
        return self.generator(tok)


def _gen_index(tok: _Token, names: tuple[str, ...]) -> int:
    if tok.kind != "gen" or tok.text[0] not in names:
        raise ParseError(f"unexpected {tok.text!r} at {tok.pos}")
    return int(tok.text[1:])


def parse_word(text: str, n: int, names: tuple[str, ...] = ("y", "g"), alphabet: str = "y") -> FreeWord:
    """Parse a free group word over ``n`` generators."""
    A = Alphabet(alphabet, n)
    grammar = _GroupGrammar(FreeWord.identity(A), lambda tok: FreeWord.generator(A, _gen_index(tok, names)))
    s = _Stream(text)
    w = grammar.expr(s)
    s.done()
    return w


_PREFIX = re.compile(r"\s*n\s*=\s*(\d+)\s*:")


def _pair(tok: _Token) -> tuple[int, int]:
    i, j = re.findall(r"\d+", tok.text)
    return int(i), int(j)


def parse_braid(text: str, n: int | None = None) -> SigmaBraid:
    """Parse a braid word; a leading ``n=K:`` fixes the strand count.

    Returns a :class:`PureBraid` when the result is pure.
    """
    m = _PREFIX.match(text)
    if m:
        declared = int(m.group(1))
        if n is not None and n != declared:
            raise ParseError(f"prefix declares {declared} strands, caller expects {n}")
        n = declared
        text = text[m.end():]
    if n is None:
        raise ParseError("strand count missing (use an n=K: prefix)")

    def generator(tok: _Token) -> SigmaBraid:
        if tok.kind == "pair" and tok.text.startswith("A"):
            return a_generator(*_pair(tok), n)
        return SigmaBraid(n, ((_gen_index(tok, ("s",)), 1),))

    s = _Stream(text)
    b = _GroupGrammar(SigmaBraid(n, ()), generator).expr(s)
    s.done()
    return b.as_pure() if b.is_pure() else b


def format_braid(b: SigmaBraid) -> str:
    """``n=K: word``; inverse of :func:`parse_braid`."""
    return f"n={b.n}: {b}".rstrip()


# -- Lie expressions --------------------------------------------------------

L = TypeVar("L")


class _LieGrammar(Generic[L]):
    """``sum := ['-'] term (('+'|'-') term)*``, ``term := [int '*'] atom``,
    ``atom := gen | '[' sum (',' sum)+ ']' | '(' sum ')'``."""

    def __init__(self, zero: L, generator: Callable[[_Token], L], bracket: Callable[[L, L], L]):
        self.zero = zero
        self.generator = generator
        self.bracket = bracket

    def sum(self, s: _Stream) -> L:
        out = self.zero
        sign = 1
        if s.at("-"):
            s.take()
            sign = -1
        elif s.at("+"):
            s.take()
        while True:
            t = self.term(s)
            out = out + t if sign > 0 else out - t
            if s.at("+"):
                sign = 1
            elif s.at("-"):
                sign = -1
            else:
                return out
            s.take()

    def term(self, s: _Stream) -> L:
        tok = s.peek()
        if tok is not None and tok.kind == "int":
            s.take()
            k = int(tok.text)
            if s.at("*"):
                s.take()
                return k * self.atom(s)
            if k == 0:
                return self.zero
            raise ParseError(f"bare integer {k} at {tok.pos}")
        return self.atom(s)

    def atom(self, s: _Stream) -> L:
        tok = s.take()
        if tok.kind == "op" and tok.text == "[":
            x = self.sum(s)
            s.expect(",")
            x = self.bracket(x, self.sum(s))
            while s.at(","):
                s.take()
                x = self.bracket(x, self.sum(s))
            s.expect("]")
            return x
        if tok.kind == "op" and tok.text == "(":
            x = self.sum(s)
            s.expect(")")
            return x
        return self.generator(tok)


def parse_lie(text: str, n: int, names: tuple[str, ...] = ("y",), alphabet: str = "y") -> LieElement:
    """Parse a Lie expression over ``n`` generators into the Lyndon basis."""
    A = Alphabet(alphabet, n)
    grammar = _LieGrammar(LieElement.zero(A), lambda tok: LieElement.generator(A, _gen_index(tok, names)), lie_bracket)
    s = _Stream(text)
    x = grammar.sum(s)
    s.done()
    return x


def parse_kohno(text: str, n: int) -> KohnoElement:
    """Parse a combination of brackets of ``B(i,j)`` into the component normal form."""

    def generator(tok: _Token) -> KohnoElement:
        if tok.kind != "pair" or not tok.text.startswith("B"):
            raise ParseError(f"expected B(i,j) at {tok.pos}, found {tok.text!r}")
        return kohno_generator(*_pair(tok), n)

    s = _Stream(text)
    x = _LieGrammar(KohnoElement.zero(n), generator, kohno_bracket).sum(s)
    s.done()
    return x
