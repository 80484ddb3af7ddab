"""Text syntax for polynomials.

Grammar (``i`` is the imaginary unit, juxtaposition multiplies)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'|'/'] factor | factor)*
    factor := atom (('^'|'**') INT)?
    atom   := NUMBER | IDENT | 'i' | '(' expr ')'

Division is only allowed by a nonzero constant.  :func:`format_poly`
produces the canonical text that :func:`parse_poly` reads back exactly.
"""

from __future__ import annotations

import re
from typing import Iterable, List, Tuple

from gmpy2 import mpq

from .poly import Poly, Ring
from .scalars import I, format_scalar

__all__ = ["parse_poly", "format_poly", "PolySyntaxError"]


class PolySyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif ident is not None:
            tokens.append(("id", ident))
        else:
            tokens.append(("op", op))
        pos = m.end()
    return tokens


def _identifiers(tokens: Iterable[Tuple[str, str]]) -> List[str]:
    seen = []
    for kind, val in tokens:
        if kind == "id" and val != "i" and val not in seen:
            seen.append(val)
    return seen


class _Parser:
    def __init__(self, tokens, ring: Ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolySyntaxError(f"expected {op!r}, got {val!r}")

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolySyntaxError("empty polynomial text")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise PolySyntaxError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("+", "-"):
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def _starts_atom(self) -> bool:
        kind, val = self.peek()
        return kind in ("num", "id") or (kind == "op" and val == "(")

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                d = self.factor()
                if not d.is_constant() or d.is_zero():
                    raise PolySyntaxError("division only by a nonzero constant")
                acc = acc / d.constant_coefficient()
            elif self._starts_atom():
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "." in val:
                raise PolySyntaxError("exponent must be a non-negative integer")
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(self.ring, mpq(val) if "." not in val else mpq(val))
        if kind == "id":
            if val == "i":
                return Poly.const(self.ring, I)
            if val not in self.ring:
                raise PolySyntaxError(f"unknown variable {val!r} for ring {self.ring.names}")
            return Poly.var(self.ring, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        raise PolySyntaxError(f"unexpected token {val!r}")


def parse_poly(text: str, ring: Ring | None = None) -> Poly:
    """Parse ``text``; without a ring, variables are taken in order of first appearance."""
    tokens = _tokenize(text)
    if ring is None:
        ring = Ring(tuple(_identifiers(tokens)))
    return _Parser(tokens, ring).parse()


def _format_monomial(names, mon) -> str:
    parts = []
    for name, e in zip(names, mon):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (mon, c) in enumerate(p.sorted_terms()):
        body = _format_monomial(p.ring.names, mon)
        text = format_scalar(c)
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        if body:
            text = body if text == "1" else f"{text}*{body}"
        if k == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)
