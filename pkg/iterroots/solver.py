"""Iterative roots of any order by triangular coefficient matching.

For g of degree e^r the candidate roots are f(z) = c*z^e + a_(e-1)*z^(e-1) + ...
+ a_0. Matching the top coefficient gives c^((e^r - 1)/(e - 1)) = lead(g). The
coefficient of z^(e^r - k) in f^r is then

    known(c, a_(e-1), ..., a_(e-k+1)) + e^(r-1) * c^(K' + e^(r-1) - 1) * a_(e-k)

with K' = (e^(r-1) - 1)/(e - 1), so each a_(e-k) follows from one division.
The remaining e^r - e coefficients are checked, never solved for.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import DegreeZero, InvalidDegreeSpec, NotMonic
from .field import (
    DEFAULT_TOLERANCE,
    Backend,
    FieldElement,
    Tolerance,
    format_element,
    nth_roots,
    zero,
)
from .linear import linear_root
from .poly import Polynomial, compose, iterate

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 4096


class Obstruction(str, Enum):
    DEGREE_MISMATCH = "degree-mismatch"
    PRIME_DEGREE = "prime-degree"
    RESIDUAL_FAILURE = "residual-failure"


@dataclass(frozen=True)
class SolveRequest:
    """Find every f of degree e with f^r = g."""

    g: Polynomial
    e: int
    r: int
    mode: Optional[Backend] = None


@dataclass(frozen=True)
class SolveResult:
    roots: tuple = ()
    complete: bool = True
    obstruction: Optional[Obstruction] = None
    detail: str = ""
    least_orders: tuple = ()
    residuals: tuple = ()

    @property
    def count(self) -> int:
        return len(self.roots)


def _target_degree(e: int, r: int, max_degree: int) -> int:
    if e < 1:
        raise InvalidDegreeSpec(f"root degree must be at least 1, got {e}")
    if r < 2:
        raise InvalidDegreeSpec(f"root order must be at least 2, got {r}")
    degree = 1
    for _ in range(r):
        degree *= e
        if degree > max_degree:
            raise InvalidDegreeSpec(
                f"{e}^{r} exceeds the maximum supported degree {max_degree}"
            )
    return degree


def _in_mode(g: Polynomial, mode: Optional[Backend]) -> Polynomial:
    if mode is None or Backend(mode) == g.backend:
        return g
    if Backend(mode) == Backend.APPROX:
        return g.embed()
    # exact requested for approximate input
    return Polynomial(g.coefficients, Backend.EXACT)


def residual(f: Polynomial, r: int, g: Polynomial) -> float:
    """Largest coefficient difference between f^r and g, as a float.

    Exact inputs are subtracted exactly first, so a match is 0.0 at any size
    and a mismatch too large for a double is inf.
    """
    F = iterate(f, r)
    if F.backend != g.backend:
        F, g = F.embed(), g.embed()
    size = max(len(F.coefficients), len(g.coefficients))
    return max(
        (abs(F.coefficient(k) - g.coefficient(k)) for k in range(size)),
        default=0.0,
    )


def _matches(F: Polynomial, g: Polynomial, tol: Tolerance) -> bool:
    if g.backend == Backend.EXACT:
        return F == g
    scale = max((abs(c) for c in g.coefficients), default=0.0)
    size = max(len(F.coefficients), len(g.coefficients))
    return all(
        tol.negligible(F.coefficient(k) - g.coefficient(k), scale) for k in range(size)
    )


def _least_order(f: Polynomial, g: Polynomial, r: int, tol: Tolerance) -> int:
    """Least r' in 1..r with f^r' = g, or 0."""
    power = Polynomial.identity(f.backend)
    for k in range(1, r + 1):
        power = compose(f, power)
        if power.degree == g.degree and _matches(power, g, tol):
            return k
    return 0


def _solve_branch(
    g: Polynomial, e: int, r: int, c: FieldElement, tol: Tolerance
) -> Optional[Polynomial]:
    """The unique candidate with leading coefficient c, if it verifies."""
    N = g.degree
    M = e ** (r - 1)
    K_inner = (M - 1) // (e - 1)
    pivot = M * c ** (K_inner + M - 1)
    assert not pivot.is_zero(), "pivot vanishes for nonzero c"

    coefficients = [zero(g.backend)] * e + [c]
    for k in range(1, e + 1):
        partial = Polynomial(tuple(coefficients), g.backend)
        known = iterate(partial, r).coefficient(N - k)
        coefficients[e - k] = (g.coefficient(N - k) - known) / pivot

    f = Polynomial(tuple(coefficients), g.backend)
    if _matches(iterate(f, r), g, tol):
        return f
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "leading coefficient %s rejected, residual %.3g",
            format_element(c),
            residual(f, r, g),
        )
    return None


def _solve_linear(g: Polynomial, r: int, tol: Tolerance) -> SolveResult:
    family = linear_root(g.coefficient(1), g.coefficient(0), r, g.backend, tol)
    roots = tuple(L.as_polynomial() for L in family.roots)
    detail = family.description if family.free_slopes else ""
    return SolveResult(
        roots=roots,
        complete=family.complete,
        obstruction=None if roots else Obstruction.RESIDUAL_FAILURE,
        detail=detail or ("" if roots else "no slope admits a matching shift"),
        least_orders=family.least_orders,
        residuals=tuple(residual(f, r, g) for f in roots),
    )


def solve(
    req: SolveRequest,
    tol: Tolerance = DEFAULT_TOLERANCE,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> SolveResult:
    """Every f of degree req.e with f^req.r = req.g, ordered by leading coefficient."""
    g = _in_mode(req.g, req.mode)
    e, r = req.e, req.r
    N = _target_degree(e, r, max_degree)
    if g.degree == 0:
        raise DegreeZero("constant polynomials have no iterative roots of degree >= 1")
    if g.degree != N:
        return SolveResult(
            complete=True,
            obstruction=Obstruction.DEGREE_MISMATCH,
            detail=f"degree {g.degree} is not {e}^{r} = {N}",
        )
    if e == 1:
        return _solve_linear(g, r, tol)

    K = (N - 1) // (e - 1)
    leading = nth_roots(g.leading, K)
    if not leading.roots:
        raise NotMonic(
            f"no solution of c^{K} = {format_element(g.leading)} lies in Q(w); "
            "normalize first or retry in approx mode"
        )
    logger.debug(
        f"{len(leading.roots)} leading coefficient(s) for c^{K} = "
        f"{format_element(g.leading)}"
    )

    roots = []
    for c in leading.roots:
        f = _solve_branch(g, e, r, c, tol)
        if f is not None:
            roots.append(f)

    if not roots:
        return SolveResult(
            complete=leading.complete,
            obstruction=Obstruction.RESIDUAL_FAILURE,
            detail="no candidate satisfies the lower coefficients",
        )
    return SolveResult(
        roots=tuple(roots),
        complete=leading.complete,
        least_orders=tuple(_least_order(f, g, r, tol) for f in roots),
        residuals=tuple(residual(f, r, g) for f in roots),
    )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def solve_any_degree(
    g: Polynomial,
    r: int,
    mode: Optional[Backend] = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> SolveResult:
    """Roots of order r of every degree e with e^r = deg(g), merged."""
    if r < 2:
        raise InvalidDegreeSpec(f"root order must be at least 2, got {r}")
    if g.degree == 0:
        raise DegreeZero("constant polynomials have no iterative roots of degree >= 1")
    if g.degree > max_degree:
        raise InvalidDegreeSpec(
            f"degree {g.degree} exceeds the maximum supported degree {max_degree}"
        )
    degrees = []
    e = 1
    while e**r <= g.degree:
        if e**r == g.degree:
            degrees.append(e)
        e += 1

    if not degrees:
        if _is_prime(g.degree):
            return SolveResult(
                obstruction=Obstruction.PRIME_DEGREE,
                detail=f"degree {g.degree} is prime, so it is no e^{r} with e >= 2",
            )
        return SolveResult(
            obstruction=Obstruction.DEGREE_MISMATCH,
            detail=f"degree {g.degree} is not an {r}-th power",
        )

    results = [solve(SolveRequest(g, e, r, mode), tol, max_degree) for e in degrees]
    roots = tuple(f for result in results for f in result.roots)
    return SolveResult(
        roots=roots,
        complete=all(result.complete for result in results),
        obstruction=None if roots else Obstruction.RESIDUAL_FAILURE,
        detail="; ".join(result.detail for result in results if result.detail),
        least_orders=tuple(k for result in results for k in result.least_orders),
        residuals=tuple(x for result in results for x in result.residuals),
    )
