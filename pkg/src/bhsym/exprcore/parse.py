"""Recursive-descent parser for the infix expression syntax.

Grammar::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" unary)?            right associative
    atom    := NUMBER | NAME | NAME "(" expr ")" | "(" expr ")"

Numbers are integers, decimals (``0.25``, ``1e-3``) or are built from
integer division (``3/4``); all of them become exact rationals.  Function
names: exp, ln (alias log), sqrt, sin, cos, tan, sinh, cosh, tanh, coth.
``tan`` and ``sqrt`` are rewritten into the core function set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from . import expr as E


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset into the source text."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


_FUNCS = {
    "exp": E.exp,
    "ln": E.ln,
    "log": E.ln,
    "sqrt": E.sqrt,
    "sin": E.sin,
    "cos": E.cos,
    "tan": E.tan,
    "sinh": E.sinh,
    "cosh": E.cosh,
    "tanh": E.tanh,
    "coth": E.coth,
}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[^\W\d]\w*)"
    r"|(?P<op>\*\*|[-+*/^(),]))",
    re.UNICODE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", _byte_offset(text, bad), text)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if value == "**":
            value = "^"
        toks.append(_Tok(kind, value, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(message, _byte_offset(self.text, tok.pos), self.text)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            self.error(f"expected {op!r}, found {found}")

    def parse(self) -> E.Expr:
        if self.tok.kind == "end":
            self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> E.Expr:
        parts = [self.term()]
        while True:
            if self.accept("+"):
                parts.append(self.term())
            elif self.accept("-"):
                parts.append(E.neg(self.term()))
            else:
                return E.add(*parts)

    def term(self) -> E.Expr:
        e = self.unary()
        while True:
            if self.accept("*"):
                e = E.mul(e, self.unary())
            elif self.tok.kind == "op" and self.tok.text == "/":
                tok = self.tok
                self.i += 1
                d = self.unary()
                try:
                    e = E.mul(e, E.power(d, -1))
                except E.DomainError:
                    self.error("division by zero", tok)
            else:
                return e

    def unary(self) -> E.Expr:
        if self.accept("-"):
            return E.neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> E.Expr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            tok = self.tok
            self.i += 1
            ex = self.unary()
            try:
                if ex.kind == E.CONST:
                    return E.power(base, ex.value)
                return E.exp(E.mul(ex, E.ln(base)))
            except E.DomainError as err:
                self.error(str(err), tok)
        return base

    def atom(self) -> E.Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return E.const(Fraction(Decimal(tok.text)))
        if tok.kind == "name":
            self.i += 1
            if self.accept("("):
                fn = _FUNCS.get(tok.text)
                if fn is None:
                    self.error(f"unknown function {tok.text!r}", tok)
                arg = self.expr()
                self.expect(")")
                try:
                    return fn(arg)
                except E.DomainError as err:
                    self.error(str(err), tok)
            return E.sym(tok.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {tok.text!r}")


def parse_expression(text: str) -> E.Expr:
    """Parse infix text into a normalized expression."""
    return _Parser(text).parse()
