"""Output records shared by the CLI and the MCP server.

Records are pydantic models; `model_dump_json(indent=2)` is the structured
output and `render_text()` the human-oriented one. Coefficient lists are
strings, highest power first, so a quartic root u*z^2 + a1*z + a0 reads
[u, a1, a0] in both `sqrt` and `solve` output.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from .field import FieldElement, format_element
from .linear import LinearRootFamily
from .poly import LinearMap, Polynomial
from .quartic import QuarticReport
from .solver import SolveResult


def coefficient_strings(f: Polynomial) -> List[str]:
    return [format_element(c) for c in f.descending()]


def _root_lines(polynomials: List[str]) -> List[str]:
    if not polynomials:
        return ["roots: none"]
    return ["roots:"] + [f"  {text}" for text in polynomials]


class PolynomialRecord(BaseModel):
    degree: int
    polynomial: str
    coefficients: List[str]

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "PolynomialRecord":
        return cls(
            degree=f.degree, polynomial=str(f), coefficients=coefficient_strings(f)
        )

    def render_text(self) -> str:
        return self.polynomial


class ClassificationRecord(BaseModel):
    """Square roots of a quartic: count 0, 1 or 3, and beta when on the curve C."""

    degree: int = 4
    count: int
    roots: List[List[str]] = Field(default_factory=list)
    polynomials: List[str] = Field(default_factory=list)
    beta: Optional[str] = None
    residuals: List[float] = Field(default_factory=list)
    normalizer: Optional[str] = None
    uncertain: bool = False

    @classmethod
    def from_report(cls, report: QuarticReport) -> "ClassificationRecord":
        classification = report.classification
        beta = classification.on_curve
        normalizer = None if report.conjugator == LinearMap.identity(
            report.conjugator.backend
        ) else str(report.conjugator)
        return cls(
            degree=report.polynomial.degree,
            count=classification.count,
            roots=[coefficient_strings(f) for f in report.roots],
            polynomials=[str(f) for f in report.roots],
            beta=None if beta is None else format_element(beta),
            residuals=list(classification.residuals),
            normalizer=normalizer,
            uncertain=classification.uncertain,
        )

    def render_text(self) -> str:
        lines = [f"count: {self.count}"]
        if self.beta is not None:
            lines.append(f"beta: {self.beta}")
        if self.normalizer is not None:
            lines.append(f"normalized by L(z) = {self.normalizer}")
        if self.uncertain:
            lines.append("uncertain: residual close to tolerance")
        lines.extend(_root_lines(self.polynomials))
        return "\n".join(lines)


class SolveRecord(BaseModel):
    degree: int
    count: int
    roots: List[List[str]] = Field(default_factory=list)
    polynomials: List[str] = Field(default_factory=list)
    residuals: List[float] = Field(default_factory=list)
    complete: bool = True
    obstruction: Optional[str] = None
    detail: str = ""
    least_orders: List[int] = Field(default_factory=list)

    @classmethod
    def from_result(cls, g: Polynomial, result: SolveResult) -> "SolveRecord":
        return cls(
            degree=g.degree,
            count=result.count,
            roots=[coefficient_strings(f) for f in result.roots],
            polynomials=[str(f) for f in result.roots],
            residuals=list(result.residuals),
            complete=result.complete,
            obstruction=(
                None if result.obstruction is None else result.obstruction.value
            ),
            detail=result.detail,
            least_orders=list(result.least_orders),
        )

    def render_text(self) -> str:
        lines = [f"count: {self.count}"]
        if self.obstruction:
            lines.append(f"obstruction: {self.obstruction}")
        if self.detail:
            lines.append(self.detail)
        if not self.complete:
            lines.append("incomplete: some leading coefficients lie outside Q(w)")
        lines.extend(_root_lines(self.polynomials))
        return "\n".join(lines)


class CurveRecord(BaseModel):
    """A point of the curve C and its three square roots."""

    beta: str
    polynomial: str
    coefficients: List[str]
    roots: List[List[str]]
    polynomials: List[str]

    @classmethod
    def from_curve(cls, beta: FieldElement, g: Polynomial, roots) -> "CurveRecord":
        return cls(
            beta=format_element(beta),
            polynomial=str(g),
            coefficients=coefficient_strings(g),
            roots=[coefficient_strings(f) for f in roots],
            polynomials=[str(f) for f in roots],
        )

    def render_text(self) -> str:
        lines = [f"beta: {self.beta}", f"g = {self.polynomial}"]
        lines.extend(_root_lines(self.polynomials))
        return "\n".join(lines)


class LinearRootRecord(BaseModel):
    kind: str
    count: int
    roots: List[List[str]] = Field(default_factory=list)
    polynomials: List[str] = Field(default_factory=list)
    free_slopes: List[str] = Field(default_factory=list)
    complete: bool = True
    least_orders: List[int] = Field(default_factory=list)

    @classmethod
    def from_family(cls, family: LinearRootFamily) -> "LinearRootRecord":
        polys = [L.as_polynomial() for L in family.roots]
        return cls(
            kind=family.kind.value,
            count=len(polys),
            roots=[coefficient_strings(f) for f in polys],
            polynomials=[str(f) for f in polys],
            free_slopes=[format_element(c) for c in family.free_slopes],
            complete=family.complete,
            least_orders=list(family.least_orders),
        )

    def render_text(self) -> str:
        lines = [f"kind: {self.kind}"]
        for slope in self.free_slopes:
            lines.append(f"family: {slope}*z+d, d free")
        if not self.complete:
            lines.append("incomplete: some slopes lie outside Q(w)")
        lines.extend(_root_lines(self.polynomials))
        return "\n".join(lines)


class NormalizeRecord(BaseModel):
    polynomial: str
    a: str
    b: str

    @classmethod
    def from_normalized(cls, g: Polynomial, L: LinearMap) -> "NormalizeRecord":
        return cls(polynomial=str(g), a=format_element(L.a), b=format_element(L.b))

    def render_text(self) -> str:
        shift = ""
        if self.b != "0":
            shift = self.b if self.b.startswith("-") else f"+{self.b}"
        return f"{self.polynomial}\nL(z) = ({self.a})*z{shift}"


class VerifyRecord(BaseModel):
    checks: Dict[str, bool]
    passed: bool
    samples: int = 0
    seed: Optional[int] = None

    def render_text(self) -> str:
        lines = [
            f"{name}: {'ok' if ok else 'FAILED'}" for name, ok in self.checks.items()
        ]
        lines.append("all checks passed" if self.passed else "some checks failed")
        return "\n".join(lines)
