"""Closed-form iterates and iterative roots of degree-one polynomials.

Roots of g(z) = a*z + b of order r are the maps f(z) = c*z + d with c^r = a
and d*(1 + c + ... + c^(r-1)) = b. When the geometric sum vanishes (c a
nontrivial r-th root of unity, so a = 1) every d works if b = 0 and none
does otherwise. Non-polynomial roots such as f(z) = k/z of the identity are
not produced.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import InvalidDegreeSpec, NotBijective
from .field import (
    DEFAULT_TOLERANCE,
    Backend,
    FieldElement,
    Tolerance,
    coerce,
    common_backend,
    format_element,
    nth_roots,
    zero,
)
from .poly import LinearMap

logger = logging.getLogger(__name__)


class FamilyKind(str, Enum):
    FINITE = "finite"
    PARAMETRIC_REFLECTION = "parametric-reflection"
    NONE = "none"


@dataclass(frozen=True)
class LinearRootFamily:
    """All linear iterative roots of a bijection z -> a*z + b.

    `free_slopes` lists the c for which f(z) = c*z + d is a root for every d;
    `roots` contains the d = 0 member of each such family. `least_orders[i]`
    is the least r' >= 1 with roots[i]^r' = g.
    """

    kind: FamilyKind
    roots: tuple = ()
    free_slopes: tuple = ()
    complete: bool = True
    least_orders: tuple = ()

    @property
    def description(self) -> str:
        if not self.free_slopes:
            return f"{len(self.roots)} linear root(s)"
        families = ", ".join(
            f"f(z) = {format_element(c)}*z + d" for c in self.free_slopes
        )
        return f"{families}, d free"

    def member(self, slope: FieldElement, d: FieldElement) -> LinearMap:
        """The root c*z + d of a parametric family."""
        if slope not in self.free_slopes:
            raise ValueError(f"{format_element(slope)} is not a free slope")
        return LinearMap(slope, d)


def linear_iterate_closed(a, b, n: int) -> LinearMap:
    """f^n for f(z) = a*z + b: a^n*z + (a^(n-1) + ... + a + 1)*b."""
    if n < 0:
        raise ValueError(f"iteration count must be nonnegative, got {n}")
    backend = common_backend(a, b)
    a, b = coerce(a, backend), coerce(b, backend)
    if n == 0:
        return LinearMap.identity(backend)
    if a.is_zero():
        raise NotBijective("z -> b is constant; its iterates are not linear maps")
    power = a**n
    if a == 1:
        shift = n * b
    else:
        shift = b * (1 - power) / (1 - a)
    return LinearMap(power, shift)


def _same_map(f: LinearMap, g: LinearMap, tol: Tolerance) -> bool:
    return tol.close(f.a, g.a) and tol.close(f.b, g.b)


def least_order(
    f: LinearMap, g: LinearMap, r: int, tol: Tolerance = DEFAULT_TOLERANCE
) -> int:
    """Least r' in 1..r with f^r' = g, or 0 if there is none."""
    for k in range(1, r + 1):
        if _same_map(linear_iterate_closed(f.a, f.b, k), g, tol):
            return k
    return 0


def linear_root(
    a,
    b,
    r: int,
    mode: Optional[Backend] = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> LinearRootFamily:
    """Every linear f with f^r = a*z + b, ordered by slope."""
    if r < 2:
        raise InvalidDegreeSpec(f"root order must be at least 2, got {r}")
    backend = Backend(mode) if mode is not None else common_backend(a, b)
    a, b = coerce(a, backend), coerce(b, backend)
    if a.is_zero():
        raise NotBijective("z -> b is not a bijection and has no linear roots")
    target = LinearMap(a, b)
    slopes = nth_roots(a, r)
    roots, free = [], []
    for c in slopes.roots:
        geometric = sum((c**k for k in range(r)), zero(backend))
        if tol.negligible(geometric, scale=float(r)):
            shift_scale = 1.0 if backend == Backend.EXACT else max(1.0, abs(a))
            if tol.negligible(b, scale=shift_scale):
                free.append(c)
                roots.append(LinearMap(c, zero(backend)))
            else:
                logger.debug(f"slope {format_element(c)} admits no shift for b != 0")
            continue
        roots.append(LinearMap(c, b / geometric))

    if free:
        kind = FamilyKind.PARAMETRIC_REFLECTION
    elif roots:
        kind = FamilyKind.FINITE
    else:
        kind = FamilyKind.NONE
    orders = tuple(least_order(f, target, r, tol) for f in roots)
    return LinearRootFamily(kind, tuple(roots), tuple(free), slopes.complete, orders)
