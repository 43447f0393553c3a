"""Sparse multivariate polynomials over Q(w), used to check identities symbolically.

A polynomial maps exponent vectors over a fixed, ordered variable list to
nonzero coefficients. The identities checked here are that the surface
equations of S vanish on the image of phi, that the second iterate of
u z^2 + b1 z + b0 has the expected coefficients, and that the three
parametrized roots over the curve C square to the curve point.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import NotCubeRootOfUnity, VariableMismatch
from .field import (
    CUBE_ROOTS_OF_UNITY,
    OMEGA,
    OMEGA_SQUARED,
    UNITS,
    Backend,
    Eisenstein,
    coerce,
    format_element,
)

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]

PHI_VARIABLES = ("a1", "a0")
QUARTIC_VARIABLES = ("b3", "b2", "b1", "b0")
QUADRATIC_VARIABLES = ("b1", "b0")
CURVE_VARIABLES = ("beta",)


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """Polynomial in `variables` with no stored zero coefficients."""

    variables: Tuple[str, ...]
    terms: Mapping[Exponents, Eisenstein]

    def __post_init__(self):
        variables = tuple(self.variables)
        terms: Dict[Exponents, Eisenstein] = {}
        for exponents, coefficient in dict(self.terms).items():
            exponents = tuple(exponents)
            if len(exponents) != len(variables):
                raise VariableMismatch(
                    f"exponent vector {exponents} does not match {variables}"
                )
            coefficient = coerce(coefficient, Backend.EXACT)
            if not coefficient.is_zero():
                terms[exponents] = coefficient
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", MappingProxyType(terms))

    @classmethod
    def constant(cls, value, variables: Sequence[str]) -> "MultiPoly":
        return cls(tuple(variables), {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatch(f"{name!r} is not one of {variables}")
        exponents = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exponents: 1})

    @classmethod
    def generators(cls, variables: Sequence[str]) -> Tuple["MultiPoly", ...]:
        return tuple(cls.variable(name, variables) for name in variables)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise VariableMismatch(
                    f"variables {self.variables} and {other.variables} differ"
                )
            return other
        return MultiPoly.constant(other, self.variables)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and dict(self.terms) == dict(
                other.terms
            )
        if isinstance(other, (int, Fraction, Eisenstein)):
            return self == MultiPoly.constant(other, self.variables)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        terms = dict(self.terms)
        for exponents, coefficient in other.terms.items():
            terms[exponents] = terms.get(exponents, 0) + coefficient
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._lift(other)
        terms: Dict[Exponents, Eisenstein] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponents = tuple(x + y for x, y in zip(e1, e2))
                terms[exponents] = terms.get(exponents, 0) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return NotImplemented
        return self * coerce(other, Backend.EXACT).inverse()

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.constant(1, self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def evaluate(self, point: Sequence) -> Eisenstein:
        """Value at `point`, given in variable order."""
        if len(point) != len(self.variables):
            raise VariableMismatch(
                f"point has {len(point)} coordinates, expected {len(self.variables)}"
            )
        values = [coerce(x, Backend.EXACT) for x in point]
        total = Eisenstein(0)
        for exponents, coefficient in self.terms.items():
            term = coefficient
            for value, e in zip(values, exponents):
                term = term * value**e
            total = total + term
        return total

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        text = ""
        for exponents in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            coefficient = self.terms[exponents]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.variables, exponents)
                if e
            )
            if not mono:
                part = format_element(coefficient)
            elif coefficient == 1:
                part = mono
            elif coefficient == -1:
                part = f"-{mono}"
            elif coefficient.q == 0 or coefficient in UNITS:
                part = f"{format_element(coefficient)}*{mono}"
            else:
                part = f"({format_element(coefficient)})*{mono}"
            if text and not part.startswith("-"):
                text += "+"
            text += part
        return text


class MvOp(str, Enum):
    ADD = "add"
    MUL = "mul"


def mv_arith(p: MultiPoly, q: MultiPoly, op: MvOp) -> MultiPoly:
    """Exact sum or product of two polynomials over the same variables."""
    if p.variables != q.variables:
        raise VariableMismatch(f"variables {p.variables} and {q.variables} differ")
    if MvOp(op) == MvOp.ADD:
        return p + q
    return p * q


def substitute(
    p: MultiPoly,
    images: Sequence[MultiPoly],
    variables: Optional[Sequence[str]] = None,
) -> MultiPoly:
    """p with its i-th variable replaced by images[i]."""
    if len(images) != len(p.variables):
        raise VariableMismatch(
            f"{len(images)} images for {len(p.variables)} variables {p.variables}"
        )
    if variables is None:
        if not images:
            raise VariableMismatch("target variables are needed when p has none")
        variables = images[0].variables
    variables = tuple(variables)
    for image in images:
        if image.variables != variables:
            raise VariableMismatch(
                f"image over {image.variables}, expected {variables}"
            )
    result = MultiPoly.constant(0, variables)
    powers: Dict[Tuple[int, int], MultiPoly] = {}
    for exponents, coefficient in p.terms.items():
        term = MultiPoly.constant(coefficient, variables)
        for index, e in enumerate(exponents):
            if e == 0:
                continue
            if (index, e) not in powers:
                powers[(index, e)] = images[index] ** e
            term = term * powers[(index, e)]
        result = result + term
    return result


def _check_unit(unit) -> Eisenstein:
    unit = coerce(unit, Backend.EXACT)
    if unit**3 != 1:
        raise NotCubeRootOfUnity(f"{format_element(unit)} is not a cube root of unity")
    return unit


def phi_images(unit=1) -> Tuple[MultiPoly, ...]:
    """(b3, b2, b1, b0) of the second iterate of unit*z^2 + a1*z + a0."""
    unit = _check_unit(unit)
    a1, a0 = MultiPoly.generators(PHI_VARIABLES)
    u2 = unit * unit
    return (
        2 * u2 * a1,
        2 * u2 * a0 + unit * a1**2 + unit * a1,
        2 * unit * a1 * a0 + a1**2,
        unit * a0**2 + a1 * a0 + a0,
    )


# coefficient tables of the two equations cutting out S in (b3, b2, b1, b0)
SURFACE_EQUATION_TERMS = (
    {
        (4, 0, 0, 0): 1,
        (2, 1, 0, 0): -8,
        (2, 0, 0, 0): -12,
        (0, 2, 0, 0): 16,
        (0, 1, 0, 0): 32,
        (1, 0, 0, 0): -16,
        (0, 0, 0, 1): -64,
    },
    {
        (3, 0, 0, 0): 1,
        (1, 1, 0, 0): -4,
        (0, 0, 1, 0): 8,
    },
)


def surface_equations() -> Tuple[MultiPoly, MultiPoly]:
    first, second = SURFACE_EQUATION_TERMS
    return MultiPoly(QUARTIC_VARIABLES, first), MultiPoly(QUARTIC_VARIABLES, second)


def verify_surface_identities(equations: Optional[Sequence[MultiPoly]] = None) -> bool:
    """Whether every surface equation vanishes identically on the image of phi."""
    if equations is None:
        equations = surface_equations()
    images = phi_images()
    for equation in equations:
        residue = substitute(equation, images)
        if not residue.is_zero:
            logger.debug(f"surface equation leaves residue {residue}")
            return False
    return True


def _univariate_mul(f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> list:
    product = [MultiPoly.constant(0, f[0].variables)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            product[i + j] = product[i + j] + a * b
    return product


def _univariate_compose(f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> list:
    """f(g(z)) for coefficient lists in ascending powers of z."""
    variables = f[0].variables
    result = [MultiPoly.constant(0, variables)]
    for coefficient in reversed(f):
        result = _univariate_mul(result, g)
        result[0] = result[0] + coefficient
    while len(result) > 1 and result[-1].is_zero:
        result.pop()
    return result


def second_iterate_coefficients(unit) -> list:
    """Expected coefficients of the second iterate of u z^2 + b1 z + b0, ascending."""
    u = _check_unit(unit)
    b1, b0 = MultiPoly.generators(QUADRATIC_VARIABLES)
    return [
        u * b0**2 + b0 * b1 + b0,
        2 * u * b0 * b1 + b1**2,
        2 * u * u * b0 + u * b1**2 + u * b1,
        2 * u * u * b1,
        MultiPoly.constant(u**3, QUADRATIC_VARIABLES),
    ]


def verify_second_iterate(unit, expected: Optional[Sequence[MultiPoly]] = None) -> bool:
    """Whether u z^2 + b1 z + b0 composed with itself has the expected coefficients."""
    u = _check_unit(unit)
    if expected is None:
        expected = second_iterate_coefficients(u)
    b1, b0 = MultiPoly.generators(QUADRATIC_VARIABLES)
    f = [b0, b1, MultiPoly.constant(u, QUADRATIC_VARIABLES)]
    computed = _univariate_compose(f, f)
    if len(computed) != len(expected):
        return False
    return all(c == e for c, e in zip(computed, expected))


def curve_images() -> Tuple[MultiPoly, ...]:
    """(b3, b2, b1, b0) of the curve C as polynomials in beta."""
    (beta,) = MultiPoly.generators(CURVE_VARIABLES)
    return (
        beta,
        Eisenstein(3) / 8 * beta**2,
        Eisenstein(1) / 16 * beta**3,
        Eisenstein(1) / 256 * beta**4 - Eisenstein(1) / 4 * beta,
    )


def verify_curve_identities() -> bool:
    """Whether C lies on S and each triple root squares to the curve point."""
    curve = curve_images()
    for equation in surface_equations():
        if not substitute(equation, curve).is_zero:
            return False
    (beta,) = MultiPoly.generators(CURVE_VARIABLES)
    b3, b2, b1, b0 = curve
    target = [b0, b1, b2, b3, MultiPoly.constant(1, CURVE_VARIABLES)]
    w, w2 = OMEGA, OMEGA_SQUARED
    roots = (
        (1, beta / 2, -beta * (beta * w2 + beta * w + 4) / 16),
        (w, beta * w / 2, -beta * (beta + beta * w2 + 4) / 16),
        (w2, beta * w2 / 2, -beta * (beta + beta * w + 4) / 16),
    )
    for unit, a1, a0 in roots:
        f = [a0, a1, MultiPoly.constant(unit, CURVE_VARIABLES)]
        if _univariate_compose(f, f) != target:
            label = format_element(coerce(unit, Backend.EXACT))
            logger.debug(f"triple root with unit {label} fails")
            return False
    return True


def verify_identities() -> Dict[str, bool]:
    """Every symbolic check, keyed by name."""
    checks = {"surface": verify_surface_identities()}
    for unit in CUBE_ROOTS_OF_UNITY:
        checks[f"second_iterate[{format_element(unit)}]"] = verify_second_iterate(unit)
    checks["curve"] = verify_curve_identities()
    return checks
