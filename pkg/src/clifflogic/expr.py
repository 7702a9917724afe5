"""Text syntax for multivectors: a small recursive-descent parser and printer.

Grammar (``*`` binds tighter than ``+``/``-``; unary minus binds tightest)::

    sum     := product (("+" | "-") product)*
    product := unary ("*" unary)*
    unary   := "-" unary | atom
    atom    := NUMBER | RATIONAL | GENERATOR | "(" sum ")"
             | ("T" | "C" | "H" | "Re") "(" sum ")"
             | "grade" "(" sum "," INT ")" | "top" "(" ")"

Generators are ``e1`` .. ``e24`` (1-based). Over GF(2) single lowercase
letters ``a``, ``b``, ... name ``e1``, ``e2``, ... as well.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .algebra import (
    FourGroup,
    Multivector,
    Ring,
    Signature,
    blade_indices,
    grade_project,
    involution,
    scalar_part,
)
from .errors import CliffordError, ParseError

MAX_TEXT_BYTES = 64 * 1024
MAX_DEPTH = 200
MAX_GENERATORS = 26
MAX_EXPONENT = 1000

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<rational>\d+/\d+)
  | (?P<decimal>(?:\d+\.\d*|\.\d+|\d+)[eE][+-]?\d+|\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*(),])
    """,
    re.VERBOSE,
)

_FUNCTIONS = {"T", "C", "H", "Re", "grade", "top"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for i, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line += 1
                    line_start = i + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring, sig: Signature):
        self.tokens = tokenize(text)
        self.i = 0
        self.ring = ring
        self.sig = sig
        self.depth = 0

    # helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("op",):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def scalar(self, value) -> Multivector:
        return Multivector.scalar(self.ring, self.sig, value)

    # grammar

    def parse(self) -> Multivector:
        value = self.sum()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return value

    def sum(self) -> Multivector:
        value = self.product()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def product(self) -> Multivector:
        value = self.unary()
        while self.tok.kind == "op" and self.tok.text == "*":
            self.advance()
            value = value * self.unary()
        return value

    def unary(self) -> Multivector:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            self.enter()
            try:
                return -self.unary()
            finally:
                self.depth -= 1
        return self.atom()

    def enter(self) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error(f"expression nested deeper than {MAX_DEPTH}")

    def atom(self) -> Multivector:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return self.scalar(int(tok.text))
        if tok.kind == "rational":
            self.advance()
            if self.ring is Ring.GF2:
                raise self.error("rational literal not allowed over GF(2)", tok)
            num, den = tok.text.split("/")
            if int(den) == 0:
                raise self.error("zero denominator", tok)
            return self.scalar(Fraction(int(num), int(den)))
        if tok.kind == "decimal":
            self.advance()
            if self.ring is Ring.GF2:
                raise self.error("decimal literal not allowed over GF(2)", tok)
            if self.ring is Ring.FLOAT:
                value = float(tok.text)
                if not math.isfinite(value):
                    raise self.error(f"decimal literal {tok.text!r} overflows float64", tok)
                return self.scalar(value)
            try:
                d = Decimal(tok.text)
            except InvalidOperation:
                raise self.error(f"bad decimal literal {tok.text!r}", tok)
            if abs(d.adjusted()) > MAX_EXPONENT:
                raise self.error(f"decimal exponent beyond {MAX_EXPONENT}", tok)
            return self.scalar(Fraction(d))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            self.enter()
            value = self.sum()
            self.expect(")")
            self.depth -= 1
            return value
        if tok.kind == "name":
            if tok.text in _FUNCTIONS:
                return self.call()
            return self.generator()
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    def generator(self) -> Multivector:
        tok = self.advance()
        m = re.fullmatch(r"e(\d+)", tok.text)
        if m:
            index = int(m.group(1)) - 1
        elif self.ring is Ring.GF2 and re.fullmatch(r"[a-z]", tok.text):
            index = ord(tok.text) - ord("a")
        else:
            raise self.error(f"unknown name {tok.text!r}", tok)
        if not 0 <= index < self.sig.k:
            raise self.error(
                f"generator {tok.text!r} outside the {self.sig.k} active generators", tok
            )
        return Multivector.generator(self.ring, self.sig, index)

    def call(self) -> Multivector:
        name = self.advance()
        self.expect("(")
        self.enter()
        if name.text == "top":
            self.expect(")")
            self.depth -= 1
            return Multivector.top(self.ring, self.sig)
        arg = self.sum()
        if name.text == "grade":
            self.expect(",")
            g = self.tok
            if g.kind != "int":
                raise self.error("grade(x, g) needs an integer grade")
            self.advance()
            self.expect(")")
            self.depth -= 1
            return grade_project(arg, int(g.text))
        self.expect(")")
        self.depth -= 1
        if name.text == "Re":
            return self.scalar(scalar_part(arg))
        return involution(arg, FourGroup(name.text))


def parse_expression(text: str, ring: Ring, sig: Signature) -> Multivector:
    """Evaluate ``text`` to a canonical multivector.

    Every failure is a :class:`~clifflogic.errors.CliffordError` subclass.
    """
    if not isinstance(text, str):
        raise ParseError("expression must be text")
    if len(text.encode("utf-8", "surrogatepass")) > MAX_TEXT_BYTES:
        raise ParseError(f"expression longer than {MAX_TEXT_BYTES} bytes")
    try:
        return _Parser(text, ring, sig).parse()
    except CliffordError:
        raise
    except (RecursionError, OverflowError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot evaluate expression: {exc}") from None


def _blade_name(bits: int, letters: bool) -> str:
    idx = blade_indices(bits)
    if letters:
        return "*".join(chr(ord("a") + i) for i in idx)
    return "*".join(f"e{i + 1}" for i in idx)


def _coeff_text(c) -> str:
    if isinstance(c, float):
        return repr(c)
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def print_expression(x: Multivector, letters: bool = False) -> str:
    """Canonical text: blades ascending by bitmask, exact coefficients.

    ``letters`` prints generators as ``a``, ``b``, ... (GF(2) only).
    """
    if letters and (x.ring is not Ring.GF2 or x.sig.k > MAX_GENERATORS):
        letters = False
    if not x:
        return "0"
    parts = []
    for bits in sorted(x.terms):
        c = x.coefficient(bits)
        negative = x.ring.signed and c < 0
        mag = -c if negative else c
        if bits == 0:
            body = _coeff_text(mag)
        elif mag == 1 and not isinstance(mag, float):
            body = _blade_name(bits, letters)
        else:
            body = f"{_coeff_text(mag)}*{_blade_name(bits, letters)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)
