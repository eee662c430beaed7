"""Recursive-descent parser for rational function expressions in x.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/' | <juxtaposition>) factor)*
    factor   := '-' factor | base ('^' nat)*      (^ is right associative)
    base     := '(' expr ')' | 'x' | int

Juxtaposition is accepted before ``x`` or ``(`` (``3x^2``, ``2(x+1)``) and
means multiplication at the same level as ``*``.  ``^`` binds tighter than
unary minus, so ``-x^2`` is ``-(x^2)``.  Rational
constants are written as quotients and go through ordinary left-associative
division: ``x/2/3`` is x/6 and ``2/3^2`` is 2/9.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import ratfun as rf
from .errors import ParseError
from .fields import QQ, Field

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "x", an operator character, or "end"
    text: str
    pos: int


def tokenize(src: str) -> list:
    out, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            out.append(Token("int", m.group(1), m.start(1)))
        else:
            ch = m.group(2)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*/^()xX":
                raise ParseError(m.start(2), "an integer, 'x', an operator or a parenthesis", src)
            out.append(Token("x" if ch in "xX" else ch, ch, m.start(2)))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


# AST nodes are plain tuples: ("num", n), ("x",), ("neg", a), ("pow", a, n),
# and (op, a, b) for op in "+-*/".


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, expected: str):
        raise ParseError(self.tok.pos, expected, self.src)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self.fail("an operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind in ("*", "/", "x", "("):
            # juxtaposition before 'x' or '(' multiplies: 3x^2, 2(x+1)
            op = self.advance().kind if self.tok.kind in ("*", "/") else "*"
            node = (op, node, self.factor())
        return node

    def factor(self):
        if self.tok.kind == "-":
            self.advance()
            return ("neg", self.factor())
        node = self.base()
        exps = []
        while self.tok.kind == "^":
            self.advance()
            if self.tok.kind != "int":
                self.fail("a nonnegative integer exponent")
            exps.append(int(self.advance().text))
        if exps:
            e = exps[-1]
            for k in reversed(exps[:-1]):
                e = k ** e
            node = ("pow", node, e)
        return node

    def base(self):
        t = self.tok
        if t.kind == "(":
            self.advance()
            node = self.expr()
            if self.tok.kind != ")":
                self.fail("')'")
            self.advance()
            return node
        if t.kind == "x":
            self.advance()
            return ("x",)
        if t.kind == "int":
            self.advance()
            return ("num", int(t.text))
        self.fail("an integer, 'x' or '('")


def parse_ast(src: str):
    return _Parser(src).parse()


def lower(node, field: Field = QQ) -> rf.RatFun:
    kind = node[0]
    if kind == "num":
        return rf.constant(field(node[1]), field)
    if kind == "x":
        return rf.x(field)
    if kind == "neg":
        return rf.neg(lower(node[1], field))
    if kind == "pow":
        return rf.power(lower(node[1], field), node[2])
    a, b = lower(node[1], field), lower(node[2], field)
    return {"+": rf.add, "-": rf.sub, "*": rf.mul, "/": rf.div}[kind](a, b)


def parse_expression(src: str, field: Field = QQ) -> rf.RatFun:
    """Parse ``src`` and return its canonical rational function over ``field``."""
    return lower(parse_ast(src), field)


def parse_list(src: str, field: Field = QQ) -> list:
    """Semicolon-separated expressions."""
    return [parse_expression(part, field) for part in src.split(";") if part.strip()]
