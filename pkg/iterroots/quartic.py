"""Polynomial iterative square roots of quartics.

A normalized quartic z^4 + b3 z^3 + b2 z^2 + b1 z + b0 is the second iterate of
u z^2 + a1 z + a0 exactly when u^3 = 1 and (b3, b2, b1, b0) = phi_u(a1, a0):

    b3 = 2 u^2 a1
    b2 = 2 u^2 a0 + u a1^2 + u a1
    b1 = 2 u a1 a0 + a1^2
    b0 = u a0^2 + a1 a0 + a0

The images S, S_w, S_w^2 of phi_1, phi_w, phi_w^2 meet pairwise along the
rational curve C parametrized by b3 = beta, so a normalized quartic has zero,
one or three such roots, three exactly on C.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import DegreeMismatch, NotCubeRootOfUnity, NotMonic
from .field import (
    CUBE_ROOTS_OF_UNITY,
    DEFAULT_TOLERANCE,
    Backend,
    Eisenstein,
    FieldElement,
    Tolerance,
    coerce,
    common_backend,
    format_element,
    omega,
)
from .poly import LinearMap, Polynomial, conjugate, normalize

logger = logging.getLogger(__name__)

# a residual within this factor of the acceptance threshold is flagged uncertain
UNCERTAINTY_FACTOR = 10.0


@dataclass(frozen=True)
class QuarticCoeffs:
    """The normalized quartic z^4 + b3 z^3 + b2 z^2 + b1 z + b0."""

    b3: FieldElement
    b2: FieldElement
    b1: FieldElement
    b0: FieldElement

    def __post_init__(self):
        backend = common_backend(self.b3, self.b2, self.b1, self.b0)
        for name in ("b3", "b2", "b1", "b0"):
            object.__setattr__(self, name, coerce(getattr(self, name), backend))

    @property
    def backend(self) -> Backend:
        return common_backend(self.b3)

    @classmethod
    def from_polynomial(
        cls, g: Polynomial, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> "QuarticCoeffs":
        if g.degree != 4:
            raise DegreeMismatch(f"expected a quartic, got degree {g.degree}")
        if not tol.close(g.leading, coerce(1, g.backend)):
            raise NotMonic(f"leading coefficient {format_element(g.leading)} is not 1")
        return cls(*(g.coefficient(k) for k in (3, 2, 1, 0)))

    def to_polynomial(self) -> Polynomial:
        return Polynomial((self.b0, self.b1, self.b2, self.b3, 1), self.backend)

    def as_tuple(self) -> tuple:
        return (self.b3, self.b2, self.b1, self.b0)


@dataclass(frozen=True)
class QuadraticRoot:
    """The quadratic unit*z^2 + a1*z + a0 with unit^3 = 1."""

    unit: FieldElement
    a1: FieldElement
    a0: FieldElement

    def __post_init__(self):
        backend = common_backend(self.unit, self.a1, self.a0)
        for name in ("unit", "a1", "a0"):
            object.__setattr__(self, name, coerce(getattr(self, name), backend))
        _check_unit(self.unit)

    def to_polynomial(self) -> Polynomial:
        return Polynomial((self.a0, self.a1, self.unit), common_backend(self.unit))

    def descending(self) -> tuple:
        return (self.unit, self.a1, self.a0)


@dataclass(frozen=True)
class Classification:
    """Outcome of sqrt_all: the roots and, on the curve C, its parameter beta."""

    count: int
    roots: tuple = ()
    on_curve: Optional[FieldElement] = None
    uncertain: bool = False
    residuals: tuple = ()

    def __post_init__(self):
        if self.count != len(self.roots):
            raise ValueError(f"count {self.count} != {len(self.roots)} roots")
        if self.uncertain:
            return
        if self.count not in (0, 1, 3):
            raise ValueError(f"a normalized quartic cannot have {self.count} roots")
        if (self.count == 3) != (self.on_curve is not None):
            raise ValueError("three roots occur exactly on the curve C")


@dataclass(frozen=True)
class QuarticReport:
    """Classification of an arbitrary quartic through its normalized conjugate."""

    polynomial: Polynomial
    normalized: QuarticCoeffs
    conjugator: LinearMap
    classification: Classification
    roots: tuple


class _Branch(NamedTuple):
    root: QuadraticRoot
    accepted: bool
    residual: float
    near_threshold: bool


def _check_unit(unit: FieldElement, tol: Tolerance = DEFAULT_TOLERANCE) -> None:
    if not tol.close(unit**3, coerce(1, common_backend(unit))):
        raise NotCubeRootOfUnity(f"{format_element(unit)} is not a cube root of unity")


def _units(backend: Backend) -> tuple:
    return tuple(coerce(u, backend) for u in CUBE_ROOTS_OF_UNITY)


def _vanishes(terms: list, tol: Tolerance) -> tuple[bool, float, float]:
    """Whether the sum of `terms` vanishes, its size, and the threshold used."""
    total = sum(terms[1:], terms[0])
    if isinstance(total, Eisenstein):
        # exact: decided on equality alone, the size is informational
        zero_sum = total.is_zero()
        return zero_sum, 0.0 if zero_sum else abs(total), 0.0
    scale = max(abs(t) for t in terms)
    return tol.negligible(total, scale), abs(total), tol.threshold(scale)


def phi(a1, a0) -> QuarticCoeffs:
    """Coefficients of the second iterate of z^2 + a1 z + a0."""
    backend = common_backend(a1, a0)
    a1, a0 = coerce(a1, backend), coerce(a0, backend)
    return QuarticCoeffs(
        2 * a1,
        2 * a0 + a1 * a1 + a1,
        2 * a1 * a0 + a1 * a1,
        a0 * a0 + a1 * a0 + a0,
    )


def phi_twisted(unit, a1, a0) -> QuarticCoeffs:
    """Coefficients of the second iterate of unit z^2 + a1 z + a0, unit^3 = 1."""
    backend = common_backend(unit, a1, a0)
    unit, a1, a0 = (coerce(x, backend) for x in (unit, a1, a0))
    _check_unit(unit)
    u2 = unit * unit
    return QuarticCoeffs(
        2 * u2 * a1,
        2 * u2 * a0 + unit * a1 * a1 + unit * a1,
        2 * unit * a1 * a0 + a1 * a1,
        unit * a0 * a0 + a1 * a0 + a0,
    )


def surface_terms(g: QuarticCoeffs) -> tuple[list, list]:
    """Terms of the two defining equations of S evaluated at g."""
    b3, b2, b1, b0 = g.as_tuple()
    first = [
        b3**4,
        -8 * b2 * b3**2,
        -12 * b3**2,
        16 * b2**2,
        32 * b2,
        -16 * b3,
        -64 * b0,
    ]
    second = [b3**3, -4 * b2 * b3, 8 * b1]
    return first, second


def on_S(g: QuarticCoeffs, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Membership in S, the quartics with a monic polynomial square root."""
    return all(_vanishes(terms, tol)[0] for terms in surface_terms(g))


def sqrt_closed(
    g: QuarticCoeffs, tol: Tolerance = DEFAULT_TOLERANCE
) -> Optional[QuadraticRoot]:
    """The monic root a1 = b3/2, a0 = -b3^2/8 - b3/4 + b2/2 when g lies on S."""
    if not on_S(g, tol):
        return None
    b3, b2 = g.b3, g.b2
    a1 = b3 / 2
    a0 = -(b3 * b3) / 8 - b3 / 4 + b2 / 2
    return QuadraticRoot(coerce(1, g.backend), a1, a0)


def _invert_branch(g: QuarticCoeffs, unit: FieldElement, tol: Tolerance) -> _Branch:
    # b3 fixes a1, b2 then fixes a0; b1 and b0 are checked
    u2 = unit * unit
    a1 = g.b3 / (2 * u2)
    a0 = (g.b2 - unit * a1 * a1 - unit * a1) / (2 * u2)
    checks = (
        [g.b1, -2 * unit * a1 * a0, -(a1 * a1)],
        [g.b0, -unit * a0 * a0, -(a1 * a0), -a0],
    )
    accepted, residual, near = True, 0.0, False
    for terms in checks:
        vanishes, size, threshold = _vanishes(terms, tol)
        accepted = accepted and vanishes
        residual = max(residual, size)
        if g.backend == Backend.APPROX and size > 0:
            ratio = size / threshold
            near = near or (1.0 / UNCERTAINTY_FACTOR < ratio <= UNCERTAINTY_FACTOR)
    return _Branch(QuadraticRoot(unit, a1, a0), accepted, residual, near)


def sqrt_all(g: QuarticCoeffs, tol: Tolerance = DEFAULT_TOLERANCE) -> Classification:
    """All polynomial square roots of g, in unit order 1, w, w^2."""
    roots, residuals, near = [], [], False
    for unit in _units(g.backend):
        branch = _invert_branch(g, unit, tol)
        residuals.append(branch.residual)
        near = near or branch.near_threshold
        if branch.accepted:
            roots.append(branch.root)
        else:
            logger.debug(
                f"unit {format_element(unit)} rejected, residual {branch.residual:.3g}"
            )
    beta = on_C(g, tol)
    uncertain = g.backend == Backend.APPROX and (
        near or len(roots) not in (0, 1, 3) or (len(roots) == 3) != (beta is not None)
    )
    return Classification(len(roots), tuple(roots), beta, uncertain, tuple(residuals))


def curve_point(beta) -> QuarticCoeffs:
    """The point of C with b3 = beta."""
    backend = common_backend(beta)
    beta = coerce(beta, backend)
    return QuarticCoeffs(
        beta,
        Fraction(3, 8) * beta**2,
        Fraction(1, 16) * beta**3,
        Fraction(1, 256) * beta**4 - beta / 4,
    )


def on_C(
    g: QuarticCoeffs, tol: Tolerance = DEFAULT_TOLERANCE
) -> Optional[FieldElement]:
    """beta = b3 when g lies on the curve C, otherwise None."""
    expected = curve_point(g.b3)
    if all(tol.close(x, y) for x, y in zip(g.as_tuple(), expected.as_tuple())):
        return g.b3
    return None


def triple_roots(beta) -> tuple[QuadraticRoot, QuadraticRoot, QuadraticRoot]:
    """The three square roots of the curve point with parameter beta."""
    backend = common_backend(beta)
    beta = coerce(beta, backend)
    w = omega(backend)
    w2 = w * w
    return (
        QuadraticRoot(1, beta / 2, -beta * (beta * w2 + beta * w + 4) / 16),
        QuadraticRoot(w, beta * w / 2, -beta * (beta + beta * w2 + 4) / 16),
        QuadraticRoot(w2, beta * w2 / 2, -beta * (beta + beta * w + 4) / 16),
    )


def classify_quartic(
    g: Polynomial, tol: Tolerance = DEFAULT_TOLERANCE
) -> QuarticReport:
    """Classify any quartic by normalizing it and conjugating the roots back."""
    if g.degree != 4:
        raise DegreeMismatch(f"expected a quartic, got degree {g.degree}")
    normalized, L = normalize(g)
    coeffs = QuarticCoeffs.from_polynomial(normalized, tol)
    classification = sqrt_all(coeffs, tol)
    back = L.inverse()
    roots = tuple(
        conjugate(root.to_polynomial(), back) for root in classification.roots
    )
    return QuarticReport(g, coeffs, L, classification, roots)
