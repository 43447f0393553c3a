"""Parser for the text syntax of field elements and polynomials.

Accepted forms:
    field elements   3/2, -7/16, w, w^2, 1/2+3/4*w, 1.5-2.0i (approx only)
    polynomials      z^4+2z^3+3/2z^2+1/2z-7/16, w*z^2+(1+w)*z
    coefficient list 1, 2, 3/2, 1/2, -7/16 (highest power first)

Printing lives next to the types: `field.format_element` and
`poly.format_polynomial`.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .errors import ParseError
from .field import Backend, FieldElement, omega
from .poly import Polynomial
from .solver import DEFAULT_MAX_DEGREE

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<symbol>[zwi])"
    r"|(?P<op>[-+*/^(),])"
    r")"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    position = 0
    stripped_end = len(text.rstrip())
    while position < stripped_end:
        match = _TOKEN.match(text, position)
        if not match or match.end() == position:
            offset = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ParseError(f"unexpected character {text[offset]!r}", offset, text)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(_Token(kind, match.group(kind), start))
        position = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser producing polynomials over one backend."""

    def __init__(
        self, text: str, backend: Backend, max_degree: int = DEFAULT_MAX_DEGREE
    ):
        self.text = text
        self.backend = Backend(backend)
        self.max_degree = max_degree
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def _error(self, message: str) -> ParseError:
        return ParseError(message, self.current.position, self.text)

    def _at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def _starts_factor(self) -> bool:
        return self.current.kind in ("number", "symbol") or self._at_op("(")

    def expression(self) -> Polynomial:
        negate = False
        if self._at_op("+", "-"):
            negate = self._advance().text == "-"
        value = self.term()
        if negate:
            value = -value
        while self._at_op("+", "-"):
            op = self._advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self._at_op("*", "/") or self._starts_factor():
            if self._at_op("/"):
                self._advance()
                position = self.current.position
                divisor = self.factor()
                if divisor.degree > 0:
                    raise ParseError("division by a non-constant", position, self.text)
                if divisor.is_zero:
                    raise ParseError("division by zero", position, self.text)
                value = value * (1 / divisor.leading)
                continue
            if self._at_op("*"):
                self._advance()
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        base = self.atom()
        if self._at_op("^"):
            self._advance()
            token = self.current
            if token.kind != "number" or not token.text.isdigit():
                raise self._error("exponent must be a nonnegative integer")
            if len(token.text.lstrip("0")) > len(str(self.max_degree)):
                raise self._error(f"exponent exceeds {self.max_degree}")
            exponent = int(token.text)
            if max(base.degree, 1) * exponent > self.max_degree:
                raise self._error(f"exponent {exponent} exceeds {self.max_degree}")
            self._advance()
            result = Polynomial.constant(1, self.backend)
            for _ in range(exponent):
                result = result * base
            return result
        return base

    def atom(self) -> Polynomial:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Polynomial.constant(self._number(token), self.backend)
        if token.kind == "symbol":
            self._advance()
            if token.text == "z":
                return Polynomial.identity(self.backend)
            if token.text == "w":
                return Polynomial.constant(omega(self.backend), self.backend)
            if self.backend == Backend.EXACT:
                raise ParseError(
                    "imaginary unit 'i' needs approx mode", token.position, self.text
                )
            return Polynomial.constant(1j, self.backend)
        if self._at_op("("):
            self._advance()
            value = self.expression()
            if not self._at_op(")"):
                raise self._error("expected ')'")
            self._advance()
            return value
        if token.kind == "end":
            raise self._error("unexpected end of input")
        raise self._error(f"unexpected {token.text!r}")

    def _number(self, token: _Token):
        if self.backend == Backend.EXACT:
            return Fraction(token.text)
        return float(token.text)

    def items(self) -> List[Polynomial]:
        values = [self.expression()]
        while self._at_op(","):
            self._advance()
            values.append(self.expression())
        if self.current.kind != "end":
            raise self._error(f"unexpected {self.current.text!r}")
        return values


def parse_polynomial(
    text: str,
    backend: Backend = Backend.EXACT,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> Polynomial:
    """Parse monomial form or a highest-first coefficient list.

    Exponents are capped at max_degree, as is the degree they produce.
    """
    items = _Parser(text, backend, max_degree).items()
    if len(items) == 1:
        return items[0]
    for item in items:
        if item.degree > 0:
            raise ParseError("coefficient list entries must be constants", 0, text)
    return Polynomial.from_descending(
        (item.coefficient(0) for item in items), Backend(backend)
    )


def parse_element(
    text: str,
    backend: Backend = Backend.EXACT,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> FieldElement:
    """Parse a single field element; `z` is rejected."""
    items = _Parser(text, backend, max_degree).items()
    if len(items) != 1:
        raise ParseError("expected a single field element", 0, text)
    if items[0].degree > 0:
        raise ParseError("field element must not contain z", text.find("z"), text)
    return items[0].coefficient(0)
