"""Text grammar for coefficients and polynomials.

::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "q" | NAME "[" INT "," INT "]" | "(" expr ")"

Generators may be multiplied in any order; the product is evaluated in the
algebra, so the result is always in standard form. Division is only allowed
by nonzero scalars.
"""

from __future__ import annotations

import re
from typing import Iterable

from .algebra import AlgebraPresentation, Element
from .coeffs import SYMBOLIC, FieldElement, QMode
from .errors import DivisionByZero, ParseError, UnknownGenerator

MAX_EXPONENT = 10_000

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<gen>[A-Za-z_]\w*\s*\[\s*\d+\s*(?:,\s*\d+\s*)*\])
  | (?P<q>q(?![\w\[]))
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, algebra: AlgebraPresentation | None, qmode: QMode):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.A = algebra
        self.qmode = qmode

    # value helpers: Elements when an algebra is present, FieldElements otherwise

    def const(self, c):
        c = self.qmode.scalar(c)
        return self.A.scalar(c) if self.A is not None else c

    def as_scalar(self, v, pos):
        if isinstance(v, Element):
            if not v.is_constant():
                return None
            return v.terms.get(v.algebra.one_monomial, self.qmode.zero)
        return v

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                s = self.as_scalar(w, pos)
                if s is None:
                    raise ParseError("division by a non-scalar", self.text, pos)
                if not s:
                    raise DivisionByZero("division by zero")
                v = v * s.inverse()
        return v

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if tok[1] == "-" else v
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            _, _, pos = self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            elif self.peek()[1] == "+":
                self.take()
            e = sign * int(self.take("int")[1])
            if abs(e) > MAX_EXPONENT:
                raise ParseError("exponent overflow", self.text, pos)
            if e < 0:
                s = self.as_scalar(v, pos)
                if s is None:
                    raise ParseError("negative power of a non-scalar", self.text, pos)
                if not s:
                    raise DivisionByZero("zero to a negative power")
                return self.const(s ** e)
            return v ** e
        return v

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.const(int(val))
        if kind == "q":
            self.take()
            return self.const(self.qmode.q)
        if kind == "gen":
            self.take()
            if self.A is None:
                raise UnknownGenerator(f"generator {val!r} outside an algebra", self.text, pos)
            try:
                return self.A.gen(self.A.generator_position(val))
            except UnknownGenerator:
                raise UnknownGenerator(f"unknown generator {val.replace(' ', '')!r}",
                                       self.text, pos) from None
        if kind == "op" and val == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected {val or 'end of input'!r}", self.text, pos)


def parse_coefficient(text: str, qmode: QMode = SYMBOLIC) -> FieldElement:
    """``"(q^2 - q^-2)/3"`` -> field element."""
    return _Parser(text, None, qmode).parse()


def parse_polynomial(text: str, A: AlgebraPresentation) -> Element:
    """Parse and canonicalize into the PBW basis of ``A``.

    >>> from spa.quantum import build_uq_plus
    >>> print(parse_polynomial("x[2,3]*x[1,2]", build_uq_plus(2)))
    q^2*x[1,2]*x[2,3] - q*x[1,3]
    """
    return _Parser(text, A, A.qmode).parse()


def format_polynomial(f: Element) -> str:
    return str(f)


def read_polynomials(lines: Iterable[str], A: AlgebraPresentation) -> list[Element]:
    """One polynomial per line; ``#`` starts a comment, blank lines are skipped."""
    out = []
    for lineno, line in enumerate(lines, 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            out.append(parse_polynomial(body, A))
        except ParseError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return out
