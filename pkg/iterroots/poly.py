"""Univariate polynomials: composition, iteration, evaluation and linear conjugation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    BackendMismatch,
    DegreeZero,
    ExactRootUnavailable,
    InvalidLinearMap,
    NormalizationError,
)
from .field import (
    DEFAULT_TOLERANCE,
    UNITS,
    Backend,
    Eisenstein,
    FieldElement,
    Tolerance,
    backend_of,
    coerce,
    common_backend,
    format_element,
    nth_roots,
    one,
    zero,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; `coefficients[k]` is the coefficient of z^k.

    Trailing zeros are trimmed, so the zero polynomial is the empty tuple.
    Constants, the zero polynomial included, have degree 0.
    """

    coefficients: tuple = ()
    backend: Backend = Backend.EXACT

    def __post_init__(self):
        backend = Backend(self.backend)
        coefficients = [coerce(c, backend) for c in self.coefficients]
        while coefficients and coefficients[-1].is_zero():
            coefficients.pop()
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def from_descending(
        cls, coefficients: Iterable, backend: Backend = Backend.EXACT
    ) -> "Polynomial":
        """Build from coefficients listed highest power first."""
        return cls(tuple(reversed(tuple(coefficients))), backend)

    @classmethod
    def constant(cls, value, backend: Backend = Backend.EXACT) -> "Polynomial":
        return cls((value,), backend)

    @classmethod
    def identity(cls, backend: Backend = Backend.EXACT) -> "Polynomial":
        return cls((0, 1), backend)

    @classmethod
    def monomial(
        cls, coefficient, power: int, backend: Backend = Backend.EXACT
    ) -> "Polynomial":
        return cls((0,) * power + (coefficient,), backend)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return max(len(self.coefficients) - 1, 0)

    @property
    def leading(self) -> FieldElement:
        if self.is_zero:
            return zero(self.backend)
        return self.coefficients[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    def coefficient(self, power: int) -> FieldElement:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return zero(self.backend)

    def descending(self) -> tuple:
        """Coefficients highest power first, zero polynomial as (0,)."""
        if self.is_zero:
            return (zero(self.backend),)
        return tuple(reversed(self.coefficients))

    def embed(self) -> "Polynomial":
        return Polynomial(self.coefficients, Backend.APPROX)

    def _check(self, other: "Polynomial") -> None:
        if self.backend != other.backend:
            raise BackendMismatch(
                f"cannot combine {self.backend.value} and "
                f"{other.backend.value} polynomials"
            )

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.backend)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        size = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)),
            self.backend,
        )

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients), self.backend)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._lift(other)
        if self.is_zero or other.is_zero:
            return Polynomial((), self.backend)
        size = len(self.coefficients) + len(other.coefficients) - 1
        product = [zero(self.backend)] * size
        for i, a in enumerate(self.coefficients):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] = product[i + j] + a * b
        return Polynomial(tuple(product), self.backend)

    __rmul__ = __mul__

    def __call__(self, z) -> FieldElement:
        return evaluate(self, z)

    def __str__(self) -> str:
        return format_polynomial(self)


@dataclass(frozen=True)
class LinearMap:
    """Affine bijection L(z) = a*z + b with a != 0."""

    a: FieldElement
    b: Optional[FieldElement] = None

    def __post_init__(self):
        backend = common_backend(self.a)
        a = coerce(self.a, backend)
        b = coerce(0 if self.b is None else self.b, backend)
        if a.is_zero():
            raise InvalidLinearMap("linear map needs a nonzero slope")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls, backend: Backend = Backend.EXACT) -> "LinearMap":
        return cls(one(backend), zero(backend))

    @property
    def backend(self) -> Backend:
        return backend_of(self.a)

    def inverse(self) -> "LinearMap":
        return LinearMap(1 / self.a, -self.b / self.a)

    def to_backend(self, backend: Backend) -> "LinearMap":
        if backend == self.backend:
            return self
        if backend == Backend.EXACT:
            raise BackendMismatch("approximate linear map has no exact form")
        return LinearMap(self.a.embed(), self.b.embed())

    def as_polynomial(self) -> Polynomial:
        return Polynomial((self.b, self.a), self.backend)

    def __call__(self, z) -> FieldElement:
        return self.a * coerce(z, self.backend) + self.b

    def __str__(self) -> str:
        return format_polynomial(self.as_polynomial())


def compose(f: Polynomial, g: Polynomial) -> Polynomial:
    """f(g(z)) by Horner substitution."""
    f._check(g)
    result = Polynomial((), g.backend)
    for c in reversed(f.coefficients):
        result = result * g + Polynomial.constant(c, g.backend)
    return result


def iterate(f: Polynomial, n: int) -> Polynomial:
    """n-fold self-composition; f^0 is the identity."""
    if n < 0:
        raise ValueError(f"iteration count must be nonnegative, got {n}")
    result = Polynomial.identity(f.backend)
    for _ in range(n):
        result = compose(f, result)
    return result


def evaluate(f: Polynomial, z) -> FieldElement:
    """Horner evaluation, exact in exact mode."""
    z = coerce(z, f.backend)
    result = zero(f.backend)
    for c in reversed(f.coefficients):
        result = result * z + c
    return result


def conjugate(g: Polynomial, L: LinearMap) -> Polynomial:
    """L^-1 o g o L; the leading coefficient becomes b_d * a^(d-1)."""
    L = L.to_backend(g.backend)
    return compose(L.inverse().as_polynomial(), compose(g, L.as_polynomial()))


def normalize(g: Polynomial) -> tuple[Polynomial, LinearMap]:
    """Monic linear conjugate of g and the map L(z) = a*z realizing it."""
    if g.degree == 0:
        raise DegreeZero("constant polynomials have no normalized form")
    if g.is_monic:
        return g, LinearMap.identity(g.backend)
    d = g.degree
    if d == 1:
        raise NormalizationError(
            "the slope of a degree-1 polynomial is invariant under conjugation"
        )
    candidates = nth_roots(one(g.backend) / g.leading, d - 1)
    if not candidates.roots:
        raise ExactRootUnavailable(
            f"no {d - 1}-th root of 1/({format_element(g.leading)}) lies in Q(w); "
            "retry in approx mode"
        )
    L = LinearMap(candidates.roots[0], zero(g.backend))
    normalized = conjugate(g, L)
    if g.backend == Backend.APPROX:
        # pin the leading coefficient to 1 after rounding
        normalized = Polynomial(normalized.coefficients[:-1] + (1,), Backend.APPROX)
    logger.debug(f"normalized {g} with a = {format_element(L.a)}")
    return normalized, L


def close(f: Polynomial, g: Polynomial, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Coefficient-wise equality, exact for exact polynomials."""
    f._check(g)
    if f.backend == Backend.EXACT:
        return f == g
    size = max(len(f.coefficients), len(g.coefficients))
    return all(tol.close(f.coefficient(k), g.coefficient(k)) for k in range(size))


def _format_term(c: FieldElement, power: int) -> str:
    if power == 0:
        return format_element(c)
    mono = "z" if power == 1 else f"z^{power}"
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    text = format_element(c)
    if isinstance(c, Eisenstein):
        if c.q == 0:
            return f"{text}{mono}"
        if c in UNITS:
            return f"{text}*{mono}"
        return f"({text})*{mono}"
    if c.im == 0:
        return f"{text}{mono}"
    return f"({text})*{mono}"


def format_polynomial(f: Polynomial) -> str:
    """Sparse monomial form, highest power first, zero terms omitted."""
    if f.is_zero:
        return "0"
    text = ""
    for power in range(len(f.coefficients) - 1, -1, -1):
        c = f.coefficients[power]
        if c.is_zero():
            continue
        term = _format_term(c, power)
        if text and not term.startswith("-"):
            text += "+"
        text += term
    return text
