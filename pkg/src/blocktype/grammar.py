"""Text form of elements.

    element := term (('+'|'-') term)*
    term    := [coeff '*'] atom
    atom    := 'L[' int ',' nat ']' | 'c'
    coeff   := int | int '/' posint

A leading sign on the first term and the bare element ``0`` are also
accepted, since the formatter produces both.  Whitespace between tokens is
ignored.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Element
from .errors import ElementParseError


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def format_element(x: Element) -> str:
    parts = [(c, "L[%d,%d]" % (idx.alpha, idx.i)) for idx, c in x.items()]
    if x.central:
        parts.append((x.central, "c"))
    if not parts:
        return "0"
    out = []
    for n, (c, atom) in enumerate(parts):
        mag = abs(c)
        body = atom if mag == 1 else "%s*%s" % (format_scalar(mag), atom)
        if n == 0:
            out.append("-" + body if c < 0 else body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise ElementParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.error("expected %r" % s)
        self.pos += len(s)

    def natural(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a digit")
        return int(self.text[start:self.pos])

    def integer(self):
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        return sign * self.natural()

    def atom(self):
        ch = self.peek()
        if ch == "c":
            self.pos += 1
            return None
        if ch == "L":
            self.pos += 1
            self.expect("[")
            a = self.integer()
            self.expect(",")
            if self.peek() == "-":
                self.error("level index must be a nonnegative integer")
            i = self.natural()
            self.expect("]")
            return (a, i)
        self.error("expected 'L[' or 'c'")

    def term(self):
        coeff = Fraction(1)
        sign = 1
        ch = self.peek()
        if ch in "+-" and self.text[self.pos + 1:].lstrip()[:1].isdigit():
            # coeff := int, so a signed coefficient may follow a separator
            sign = -1 if ch == "-" else 1
            self.pos += 1
        if self.peek().isdigit():
            num = sign * self.natural()
            coeff = Fraction(num)
            if self.peek() == "/":
                self.pos += 1
                at = self.pos
                den = self.natural()
                if den == 0:
                    self.error("zero denominator", at)
                coeff = Fraction(num, den)
            self.expect("*")
        return coeff, self.atom()

    def element(self):
        if self.peek() == "0":
            save = self.pos
            self.pos += 1
            if self.peek() == "":
                return Element()
            self.pos = save
        terms: dict = {}
        cen = Fraction(0)
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        while True:
            coeff, atom = self.term()
            coeff *= sign
            if atom is None:
                cen += coeff
            else:
                terms[atom] = terms.get(atom, 0) + coeff
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                self.error("expected '+', '-' or end of input")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return Element(terms, cen)


def parse_element(text: str) -> Element:
    """Parse the text form; raises ElementParseError with a position."""
    if not text.strip():
        raise ElementParseError("empty element", text, 0)
    return _Parser(text).element()


def parse_scalar(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ElementParseError("not a rational number", text, 0) from None
