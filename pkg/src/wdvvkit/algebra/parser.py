"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | IDENT | '(' expr ')'

Division is only allowed by a nonzero constant, so ``1/2*x1`` and
``(x1 + x2)/3`` parse while ``x1/x2`` does not.  Exponents must be
non-negative integer literals.  Every error carries the byte offset of
the offending token.
"""
from __future__ import annotations

import re

from wdvvkit.algebra.poly import Poly, VarCtx


class ExprError(ValueError):
    """Base class for parse failures; ``offset`` is a byte offset into the UTF-8 text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset


class ExprSyntaxError(ExprError):
    pass


class UnknownIdentifierError(ExprError):
    pass


class ExponentError(ExprError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        start = m.start(m.lastindex)
        byte_off = len(text[:start].encode("utf-8"))
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), byte_off))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), byte_off))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", byte_off)
            tokens.append(("op", ch, byte_off))
        pos = m.end()
    tokens.append(("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VarCtx):
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise ExprSyntaxError("empty expression", self.peek()[2])
        p = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {val!r}", off)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.unary()
            elif kind == "op" and val == "/":
                self.take()
                q_off = self.peek()[2]
                q = self.unary()
                if not q.is_constant():
                    raise ExprSyntaxError("division is only allowed by a constant", q_off)
                if q.is_zero():
                    raise ExprSyntaxError("division by zero", q_off)
                p = p / q.constant_value()
            else:
                return p

    def unary(self) -> Poly:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, val, off = self.peek()
        if not (kind == "op" and val == "^"):
            return base
        self.take()
        kind, val, off = self.take()
        if kind == "op" and val == "-":
            raise ExponentError("negative exponent", off)
        if kind != "int":
            raise ExponentError("exponent must be a non-negative integer literal", off)
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "^":
            raise ExprSyntaxError("chained exponents need parentheses", nxt[2])
        return base ** int(val)

    def atom(self) -> Poly:
        kind, val, off = self.take()
        if kind == "int":
            return Poly.const(self.ctx, int(val))
        if kind == "ident":
            try:
                k = self.ctx.index(val)
            except KeyError:
                raise UnknownIdentifierError(f"unknown identifier {val!r}", off) from None
            return Poly.var(self.ctx, k + 1)
        if kind == "op" and val == "(":
            p = self.expr()
            k2, v2, o2 = self.take()
            if not (k2 == "op" and v2 == ")"):
                raise ExprSyntaxError("expected ')'", o2)
            return p
        if kind == "end":
            raise ExprSyntaxError("unexpected end of expression", off)
        raise ExprSyntaxError(f"unexpected token {val!r}", off)


def parse_expr(text: str, ctx: VarCtx) -> Poly:
    """Parse ``text`` into a canonical :class:`Poly` over ``ctx``."""
    if not isinstance(text, str):
        raise ExprSyntaxError(f"expression must be a string, got {type(text).__name__}", 0)
    # a decimal point right after an exponent literal is a non-integer exponent
    m = re.search(r"\^\s*\d+\s*\.", text)
    if m:
        raise ExponentError("non-integer exponent", len(text[: m.end() - 1].encode("utf-8")))
    return _Parser(text, ctx).parse()


def format_expr(p: Poly) -> str:
    """Canonical printed form; ``parse_expr(format_expr(p), p.ctx) == p``."""
    return str(p)
