"""Polynomial input syntax.

    expr   := operand (binop operand)*       precedence climbing
    binop  := '+' | '-' (1)  '*' | '/' (2)  '^' (4, right-assoc)
    operand:= '-' expr[3] | integer | 'x' | 'y' | 'w' | '(' expr ')'

Unary minus binds looser than '^', so -x^2 is -(x^2).  Division is allowed
only by a nonzero constant, exponents must be nonnegative integer constants,
and the generator w needs a declared cyclotomic field.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .curves.bipoly import BiPoly
from .curves.field import QQ, CyclotomicField

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()])|(\S))")
_BINARY = {"+": (1, "left"), "-": (1, "left"), "*": (2, "left"), "/": (2, "left"),
           "^": (4, "right")}
_UNARY_PREC = 3


class PolySyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column = line, column


@dataclass(frozen=True)
class _Tok:
    kind: str       # num, ident, op, end
    text: str
    line: int
    col: int


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:       # only trailing whitespace is left
            break
        num, ident, op, bad = m.groups()
        start = m.start(m.lastindex)
        line, col = _position(text, start)
        if bad is not None:
            raise PolySyntaxError(f"unexpected character {bad!r}", line, col)
        if num is not None:
            toks.append(_Tok("num", num, line, col))
        elif ident is not None:
            toks.append(_Tok("ident", ident, line, col))
        else:
            toks.append(_Tok("op", "^" if op == "**" else op, line, col))
        pos = m.end()
    line, col = _position(text, len(text))
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, field: CyclotomicField | None):
        self.toks = tokenize(text)
        self.i = 0
        self.field = field
        self.K = field or QQ

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: _Tok):
        raise PolySyntaxError(msg, tok.line, tok.col)

    def parse(self) -> BiPoly:
        if self.peek().kind == "end":
            self.fail("empty expression", self.peek())
        out = self.expr(0)
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}", self.peek())
        return out

    def expr(self, min_prec: int) -> BiPoly:
        lhs = self.operand()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text not in _BINARY:
                return lhs
            prec, assoc = _BINARY[tok.text]
            if prec < min_prec:
                return lhs
            self.take()
            rhs = self.expr(prec + 1 if assoc == "left" else prec)
            lhs = self.apply(tok, lhs, rhs)

    def apply(self, tok: _Tok, a: BiPoly, b: BiPoly) -> BiPoly:
        op = tok.text
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if not b.is_constant() or b.is_zero():
                self.fail("division only by a nonzero constant", tok)
            return a / b.coeff(0, 0)
        # exponent
        if not b.is_constant():
            self.fail("exponent must be a constant", tok)
        e = b.coeff(0, 0)
        if not e.is_rational() or e.to_fraction().denominator != 1 or e.to_fraction() < 0:
            self.fail("exponent must be a nonnegative integer", tok)
        return a ** int(e.to_fraction())

    def operand(self) -> BiPoly:
        tok = self.take()
        if tok.kind == "op" and tok.text == "-":
            return -self.expr(_UNARY_PREC)
        if tok.kind == "op" and tok.text == "+":
            return self.expr(_UNARY_PREC)
        if tok.kind == "num":
            return BiPoly.const(Fraction(int(tok.text)), self.K)
        if tok.kind == "ident":
            if tok.text == "x":
                return BiPoly.x(self.K)
            if tok.text == "y":
                return BiPoly.y(self.K)
            if tok.text == "w":
                if self.field is None:
                    self.fail("generator 'w' used without --field zeta:d", tok)
                return BiPoly.const(self.K.zeta(), self.K)
            self.fail(f"unknown identifier {tok.text!r}", tok)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr(0)
            close = self.take()
            if close.kind != "op" or close.text != ")":
                self.fail("expected ')'", close)
            return inner
        if tok.kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {tok.text!r}", tok)


def parse_poly(text: str, field: CyclotomicField | None = None) -> BiPoly:
    return _Parser(text, field).parse()


def parse_field(spec: str | None) -> CyclotomicField | None:
    """'zeta:d' -> Q(zeta_d); None stays None."""
    if spec is None:
        return None
    m = re.fullmatch(r"zeta:(\d+)", spec.strip())
    if not m or int(m.group(1)) < 1:
        raise ValueError(f"field must look like zeta:d with d >= 1, got {spec!r}")
    return CyclotomicField(int(m.group(1)))


def format_poly(P: BiPoly) -> str:
    return str(P)
