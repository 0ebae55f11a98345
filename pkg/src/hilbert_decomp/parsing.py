"""Text syntax for rational series, e.g. ``1/((1-t^2)(1-t^5)) - t^4/((1-t^3)(1-t^5))``.

Grammar (whitespace is ignored)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := numer ['/' denom]
    numer   := '(' laurent ')' | monomial
    laurent := ['+'|'-'] monomial (('+'|'-') monomial)*
    monomial:= coeff [['*'] 't' [exp]] | 't' [exp]
    coeff   := INT ['/' INT]
    exp     := '^' (SINT | '{' SINT '}' | '(' SINT ')')
    denom   := factor | '(' factor ([*] factor)* ')'
    factor  := '(' '1' '-' 't' [exp] ')' ['^' INT]

Printing is canonical: monomials by ascending exponent, denominator factors
by ascending degree, so ``parse(format(parse(s)))`` is ``parse(s)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .series import DenominatorSpec, LaurentPolynomial, RationalSeries

__all__ = [
    "InputExpression",
    "parse_rational_function",
    "parse_series",
    "format_laurent",
    "format_denominator",
    "format_series",
]

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")


@dataclass(frozen=True)
class InputExpression:
    source: str
    series: RationalSeries

    def canonical(self) -> str:
        return format_series(self.series)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        text = text.replace("−", "-")
        while True:
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            start = m.start(1) if m.group(1) is not None else m.start(2)
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), start))
            else:
                ch = m.group(2)
                if ch not in "t+-*/^(){}":
                    raise ParseError(f"unexpected character {ch!r}", start, self.text)
                self.tokens.append((ch, ch, start))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    # -- token helpers --------------------------------------------------
    def peek(self, offset: int = 0) -> str:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)][0]

    def pos(self) -> int:
        return self.tokens[self.i][2]

    def take(self, kind: str | None = None) -> str:
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "integer" if kind == "int" else repr(kind)
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {found}", tok[2], self.text)
        self.i += 1
        return tok[1]

    def accept(self, kind: str) -> bool:
        if self.peek() == kind:
            self.i += 1
            return True
        return False

    # -- grammar ----------------------------------------------------------
    def parse(self) -> RationalSeries:
        if self.peek() == "end":
            raise ParseError("empty expression", 0, self.text)
        sign = self.leading_sign()
        total = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            sign = 1 if self.take() == "+" else -1
            total = total + self.term().scale(sign)
        if self.peek() != "end":
            raise ParseError(f"unexpected {self.tokens[self.i][1]!r}", self.pos(), self.text)
        return total

    def leading_sign(self) -> int:
        if self.accept("-"):
            return -1
        self.accept("+")
        return 1

    def term(self) -> RationalSeries:
        if self.peek() == "(":
            self.take("(")
            num = self.laurent()
            self.take(")")
        else:
            num = self.monomial()
        spec = DenominatorSpec()
        if self.accept("/"):
            spec = self.denom()
        return RationalSeries(num, spec)

    def laurent(self) -> LaurentPolynomial:
        sign = self.leading_sign()
        total = self.monomial().scale(sign)
        while self.peek() in ("+", "-"):
            sign = 1 if self.take() == "+" else -1
            total = total + self.monomial().scale(sign)
        return total

    def monomial(self) -> LaurentPolynomial:
        coeff = Fraction(1)
        if self.peek() == "int":
            coeff = Fraction(int(self.take("int")))
            if self.peek() == "/" and self.peek(1) == "int":
                self.take("/")
                at = self.pos()
                den = int(self.take("int"))
                if den == 0:
                    raise ParseError("zero denominator in coefficient", at, self.text)
                coeff /= den
            if self.peek() == "*" and self.peek(1) == "t":
                self.take("*")
            if self.peek() != "t":
                return LaurentPolynomial({0: coeff})
        if self.peek() != "t":
            found = self.tokens[self.i][1] or "end of input"
            raise ParseError(f"expected a monomial, found {found!r}", self.pos(), self.text)
        self.take("t")
        exp = self.exponent() if self.peek() == "^" else 1
        return LaurentPolynomial({exp: coeff})

    def signed_int(self) -> int:
        return self.leading_sign() * int(self.take("int"))

    def exponent(self) -> int:
        self.take("^")
        for open_, close in (("{", "}"), ("(", ")")):
            if self.accept(open_):
                value = self.signed_int()
                self.take(close)
                return value
        return self.signed_int()

    def denom(self) -> DenominatorSpec:
        if self.peek() == "(" and self.peek(1) == "(":
            self.take("(")
            degrees = self.factor()
            while self.peek() in ("(", "*"):
                self.accept("*")
                degrees += self.factor()
            self.take(")")
            return DenominatorSpec(degrees)
        return DenominatorSpec(self.factor())

    def factor(self) -> list[int]:
        self.take("(")
        at = self.pos()
        if self.take("int") != "1":
            raise ParseError("denominator factors must read (1-t^d)", at, self.text)
        self.take("-")
        self.take("t")
        at = self.pos()
        d = self.exponent() if self.peek() == "^" else 1
        if d <= 0:
            raise ParseError(f"factor degree must be positive, got {d}", at, self.text)
        self.take(")")
        power = 1
        if self.accept("^"):
            at = self.pos()
            power = int(self.take("int"))
            if power < 1:
                raise ParseError("factor power must be positive", at, self.text)
        return [d] * power


def parse_rational_function(text: str) -> InputExpression:
    """Parse ``text`` into an exact series over the union of its denominators."""
    return InputExpression(text, _Parser(text).parse())


def parse_series(text: str) -> RationalSeries:
    return _Parser(text).parse()


def format_laurent(p: LaurentPolynomial) -> str:
    if p.is_zero:
        return "0"
    out = []
    for k, c in p.items():
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "t" if k == 1 else f"t^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_denominator(spec: DenominatorSpec) -> str:
    groups = []
    for d, a in spec.multiplicities.items():
        f = "(1-t)" if d == 1 else f"(1-t^{d})"
        groups.append(f if a == 1 else f"{f}^{a}")
    if len(groups) == 1:
        return groups[0]
    return "(" + "".join(groups) + ")"


def format_series(P: RationalSeries) -> str:
    num = P.numerator
    if len(P.denominator) == 0:
        return format_laurent(num)
    text = format_laurent(num)
    simple = len(num) <= 1 and all(c.denominator == 1 for _, c in num.items())
    if not simple:
        text = f"({text})"
    return f"{text}/{format_denominator(P.denominator)}"
