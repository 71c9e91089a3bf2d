"""Parser and printer for map literals such as ``((x^2+x+1)*y/(x^2+1), x)``.

Grammar, loosest binding first::

    map     := "(" expr "," expr ")"
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | "+" unary | power
    power   := atom ("^" INTEGER)?
    atom    := NUMBER | "x" | "y" | "(" expr ")"

Numbers are integers or finite decimals, both read as exact rationals.
Exponents are non-negative integer literals; ``x^2^3`` must be bracketed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..algebra.bihom import bihomogenize
from ..algebra.bipoly import BiPoly, exact_quotient, poly_gcd
from ..core.maps import SurfaceMap
from ..errors import ParseError, ZeroDenominator

MAX_INPUT = 1 << 20

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Var, Neg, BinOp, Pow]


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        if len(text.encode("utf-8")) > MAX_INPUT:
            raise ParseError("input exceeds 1 MB", MAX_INPUT)
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise ParseError(f"expected {text!r}, found {found}", self.tok.pos)
        return self.take()

    def done(self):
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.take().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = self.take().text
            arg = self.unary()
            return Neg(arg) if sign == "-" else arg
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            t = self.tok
            if t.kind != "num" or not t.text.isdigit():
                raise ParseError("exponent must be a non-negative integer literal", t.pos)
            self.take()
            if self.tok.kind == "op" and self.tok.text == "^":
                raise ParseError("chained exponents need parentheses", self.tok.pos)
            return Pow(base, int(t.text))
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(Fraction(t.text))
        if t.kind == "name":
            if t.text not in ("x", "y"):
                raise ParseError(f"unknown symbol {t.text!r}; only x, y and rational numbers are allowed",
                                 t.pos)
            self.take()
            return Var(t.text)
        if t.kind == "op" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected a number, x, y or '(', found {found}", t.pos)


def parse_expr(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    p.done()
    return node


def parse_map_ast(text: str) -> tuple[Node, Node]:
    p = _Parser(text)
    p.expect("(")
    first = p.expr()
    p.expect(",")
    second = p.expr()
    p.expect(")")
    p.done()
    return first, second


# --- meaning ---------------------------------------------------------------------

def to_fraction(node: Node) -> tuple[BiPoly, BiPoly]:
    """``(numerator, denominator)`` of the rational function; ZeroDenominator on ``/0``."""
    if isinstance(node, Num):
        return BiPoly.const(node.value), BiPoly.const(1)
    if isinstance(node, Var):
        return (BiPoly.x() if node.name == "x" else BiPoly.y()), BiPoly.const(1)
    if isinstance(node, Neg):
        a, b = to_fraction(node.arg)
        return -a, b
    if isinstance(node, Pow):
        a, b = to_fraction(node.base)
        return a ** node.exponent, b ** node.exponent
    a, b = to_fraction(node.left)
    c, d = to_fraction(node.right)
    if node.op == "*":
        return _reduce(a * c, b * d)
    if node.op == "/":
        if c.is_zero():
            raise ZeroDenominator("division by zero in map expression")
        return _reduce(a * d, b * c)
    if b == d:
        return (a + c, b) if node.op == "+" else (a - c, b)
    return _reduce(a * d + c * b, b * d) if node.op == "+" else _reduce(a * d - c * b, b * d)


def _reduce(num: BiPoly, den: BiPoly) -> tuple[BiPoly, BiPoly]:
    if den.is_constant() or num.is_zero():
        return num, den
    g = poly_gcd(num, den)
    if g.is_constant():
        return num, den
    return exact_quotient(num, g), exact_quotient(den, g)


def evaluate(node: Node, x, y):
    """Value at a point, straight from the tree (independent of the polynomial route)."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x if node.name == "x" else y
    if isinstance(node, Neg):
        return -evaluate(node.arg, x, y)
    if isinstance(node, Pow):
        return evaluate(node.base, x, y) ** node.exponent
    a, b = evaluate(node.left, x, y), evaluate(node.right, x, y)
    if node.op == "/":
        if b == 0:
            raise ZeroDenominator("division by zero during evaluation")
        return a / b
    return {"+": a + b, "-": a - b, "*": a * b}[node.op]


def parse_map(text: str) -> SurfaceMap:
    """A SurfaceMap from a literal ``(expr1, expr2)`` with cleared coordinate pairs."""
    coords = []
    for node in parse_map_ast(text):
        num, den = to_fraction(node)
        if den.is_zero():
            raise ZeroDenominator("coordinate has zero denominator")
        coords.append(bihomogenize(num, den))
    return SurfaceMap(*coords)


def print_map(f: SurfaceMap) -> str:
    """Canonical text; ``parse_map(print_map(f)) == f`` for maps over Q."""
    if not f.is_real():
        raise ValueError("only maps with rational coefficients can be printed as literals")
    return str(f)
