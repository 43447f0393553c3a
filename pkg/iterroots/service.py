"""Command layer shared by the CLI and the MCP server.

Each function takes text input and a config, runs the library and returns a
record. Failed mathematical gates are raised as ObstructionError naming the
gate (degree, membership or exact-root) and carrying the record, if any.
"""

import logging
import random
from contextlib import contextmanager
from fractions import Fraction
from typing import Optional

from .config import IterRootsConfig
from .errors import (
    DegreeMismatch,
    DegreeZero,
    InvalidDegreeSpec,
    ExactRootUnavailable,
    NotMonic,
    ObstructionError,
)
from .field import UNITS, Backend
from .linear import FamilyKind, linear_iterate_closed, linear_root
from .multipoly import verify_identities
from .poly import Polynomial, compose, iterate, normalize
from .quartic import (
    QuarticCoeffs,
    classify_quartic,
    curve_point,
    on_C,
    on_S,
    phi,
    sqrt_all,
    sqrt_closed,
    triple_roots,
)
from .records import (
    ClassificationRecord,
    CurveRecord,
    LinearRootRecord,
    NormalizeRecord,
    PolynomialRecord,
    SolveRecord,
    VerifyRecord,
)
from .solver import Obstruction, SolveRequest, solve, solve_any_degree
from .syntax import parse_element, parse_polynomial

logger = logging.getLogger(__name__)

SAMPLE_BOUND = 1000


@contextmanager
def _gates():
    try:
        yield
    except (ExactRootUnavailable, NotMonic) as e:
        raise ObstructionError("exact-root", str(e)) from e
    except (DegreeMismatch, DegreeZero) as e:
        raise ObstructionError("degree", str(e)) from e


def _config(config: Optional[IterRootsConfig]) -> IterRootsConfig:
    return config if config is not None else IterRootsConfig()


def iterate_polynomial(
    text: str, n: int, config: Optional[IterRootsConfig] = None
) -> PolynomialRecord:
    config = _config(config)
    f = parse_polynomial(text, config.mode, config.max_degree)
    if n < 0:
        raise InvalidDegreeSpec(f"iteration count must be nonnegative, got {n}")
    if f.degree <= 1:
        return PolynomialRecord.from_polynomial(_iterate_affine(f, n, config))
    degree = 1
    for _ in range(n):
        degree *= f.degree
        if degree > config.max_degree:
            raise ObstructionError(
                "degree", f"degree {f.degree}^{n} exceeds {config.max_degree}"
            )
    return PolynomialRecord.from_polynomial(iterate(f, n))


def _iterate_affine(f: Polynomial, n: int, config: IterRootsConfig) -> Polynomial:
    """f^n for deg f <= 1 in closed form, so n may be arbitrarily large."""
    if n == 0:
        return Polynomial.identity(f.backend)
    if f.degree <= 0:
        return f
    a, b = f.coefficient(1), f.coefficient(0)
    # a^n grows by about n digits unless a is a unit
    if f.backend == Backend.EXACT and a not in UNITS and n > config.max_degree:
        raise ObstructionError(
            "degree",
            f"{n} iterations of a non-unit slope exceed {config.max_degree}",
        )
    return linear_iterate_closed(a, b, n).as_polynomial()


def compose_polynomials(
    f_text: str, g_text: str, config: Optional[IterRootsConfig] = None
) -> PolynomialRecord:
    config = _config(config)
    f = parse_polynomial(f_text, config.mode, config.max_degree)
    g = parse_polynomial(g_text, config.mode, config.max_degree)
    if f.degree * g.degree > config.max_degree:
        raise ObstructionError(
            "degree",
            f"degree {f.degree}*{g.degree} exceeds {config.max_degree}",
        )
    return PolynomialRecord.from_polynomial(compose(f, g))


def classify(
    text: str, config: Optional[IterRootsConfig] = None
) -> ClassificationRecord:
    """Count the square roots of a quartic; a count of 0 is an answer."""
    config = _config(config)
    g = parse_polynomial(text, config.mode, config.max_degree)
    with _gates():
        report = classify_quartic(g, config.tolerance_policy)
    return ClassificationRecord.from_report(report)


def sqrt_quartic(
    text: str, config: Optional[IterRootsConfig] = None
) -> ClassificationRecord:
    """Square roots of a quartic; having none fails the membership gate."""
    record = classify(text, config)
    if record.count == 0:
        raise ObstructionError(
            "membership", "the quartic lies on none of S, S_w, S_w^2", record
        )
    return record


def curve(beta_text: str, config: Optional[IterRootsConfig] = None) -> CurveRecord:
    config = _config(config)
    beta = parse_element(beta_text, config.mode, config.max_degree)
    g = curve_point(beta).to_polynomial()
    roots = [root.to_polynomial() for root in triple_roots(beta)]
    return CurveRecord.from_curve(beta, g, roots)


def solve_polynomial(
    text: str,
    order: int,
    degree: Optional[int] = None,
    config: Optional[IterRootsConfig] = None,
) -> SolveRecord:
    """Iterative roots of the given order, of one degree or of every admissible one."""
    config = _config(config)
    g = parse_polynomial(text, config.mode, config.max_degree)
    tol = config.tolerance_policy
    with _gates():
        if degree is None:
            result = solve_any_degree(g, order, config.mode, tol, config.max_degree)
        else:
            result = solve(
                SolveRequest(g, degree, order, config.mode), tol, config.max_degree
            )
    record = SolveRecord.from_result(g, result)
    if result.obstruction is not None:
        gate = (
            "membership"
            if result.obstruction == Obstruction.RESIDUAL_FAILURE
            else "degree"
        )
        message = f"{result.obstruction.value}: {result.detail}"
        raise ObstructionError(gate, message, record)
    return record


def linear_roots(
    a_text: str, b_text: str, order: int, config: Optional[IterRootsConfig] = None
) -> LinearRootRecord:
    config = _config(config)
    a = parse_element(a_text, config.mode, config.max_degree)
    b = parse_element(b_text, config.mode, config.max_degree)
    family = linear_root(a, b, order, config.mode, config.tolerance_policy)
    record = LinearRootRecord.from_family(family)
    if family.kind == FamilyKind.NONE:
        raise ObstructionError(
            "membership",
            f"z -> ({a_text})*z + ({b_text}) has no linear root of order {order}",
            record,
        )
    return record


def normalize_polynomial(
    text: str, config: Optional[IterRootsConfig] = None
) -> NormalizeRecord:
    config = _config(config)
    g = parse_polynomial(text, config.mode, config.max_degree)
    with _gates():
        normalized, L = normalize(g)
    return NormalizeRecord.from_normalized(normalized, L)


def random_rational(rng: random.Random, bound: int = SAMPLE_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _roots_of(g: QuarticCoeffs) -> set:
    return {root.to_polynomial() for root in sqrt_all(g).roots}


def _solver_agrees(g: QuarticCoeffs) -> bool:
    result = solve(SolveRequest(g.to_polynomial(), 2, 2, Backend.EXACT))
    return set(result.roots) == _roots_of(g)


def _sampled_checks(samples: int, seed: int) -> dict:
    rng = random.Random(seed)
    round_trip = trichotomy = oracle = True
    for _ in range(samples):
        a1, a0 = random_rational(rng), random_rational(rng)
        image = phi(a1, a0)
        root = sqrt_closed(image)
        round_trip = round_trip and (
            root is not None
            and (root.a1, root.a0) == (a1, a0)
            and iterate(root.to_polynomial(), 2) == image.to_polynomial()
        )

        off = QuarticCoeffs(*(random_rational(rng) for _ in range(4)))
        while on_S(off):
            off = QuarticCoeffs(*(random_rational(rng) for _ in range(4)))
        point = curve_point(random_rational(rng))
        point_poly = point.to_polynomial()
        trichotomy = (
            trichotomy
            and sqrt_all(off).count == 0
            and (on_C(image) is not None or sqrt_all(image).count == 1)
            and sqrt_all(point).count == 3
            and all(iterate(f, 2) == point_poly for f in _roots_of(point))
        )
        oracle = oracle and all(_solver_agrees(g) for g in (off, image, point))
    return {
        "sampled round-trip": round_trip,
        "sampled trichotomy": trichotomy,
        "sampled solver agreement": oracle,
    }


def verify(
    samples: int = 0,
    seed: Optional[int] = None,
    config: Optional[IterRootsConfig] = None,
) -> VerifyRecord:
    """Symbolic identity checks, plus seeded sampled checks when samples > 0."""
    config = _config(config)
    if seed is None:
        seed = config.seed if config.seed is not None else 0
    checks = verify_identities()
    if samples > 0:
        checks.update(_sampled_checks(samples, seed))
    passed = all(checks.values())
    if not passed:
        logger.warning(f"failed checks: {[k for k, ok in checks.items() if not ok]}")
    return VerifyRecord(
        checks=checks, passed=passed, samples=samples, seed=seed if samples else None
    )
