"""Tests for univariate polynomials, composition and normalization."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iterroots.errors import (
    BackendMismatch,
    DegreeZero,
    ExactRootUnavailable,
    InvalidLinearMap,
    NormalizationError,
)
from iterroots.field import OMEGA, ApproxComplex, Backend, Eisenstein
from iterroots.poly import (
    LinearMap,
    Polynomial,
    close,
    compose,
    conjugate,
    evaluate,
    iterate,
    normalize,
)
from tests.strategies import (
    integer_elements,
    linear_maps,
    polynomials,
    quadratics,
)

z = Polynomial.identity()


def desc(*coefficients, backend=Backend.EXACT):
    return Polynomial.from_descending(coefficients, backend)


@pytest.mark.unit
class TestPolynomial:
    """Construction and ring operations."""

    def test_trailing_zeros_trimmed(self):
        """Degree ignores zero leading coefficients."""
        p = Polynomial((1, 2, 0, 0))
        assert p.degree == 1
        assert p.coefficients == (1, 2)

    def test_zero_and_constants_have_degree_zero(self):
        """The zero polynomial and constants both have degree 0."""
        assert Polynomial(()).degree == 0
        assert Polynomial((0,)).is_zero
        assert Polynomial.constant(5).degree == 0

    def test_descending_view(self):
        """Highest-first coefficients."""
        p = desc(1, 2, 3)
        assert p.descending() == (1, 2, 3)
        assert p.coefficient(0) == 3
        assert p.coefficient(7) == 0

    def test_arithmetic(self):
        """Sum and product."""
        assert (z + 1) * (z - 1) == desc(1, 0, -1)
        assert 2 * z + 1 == desc(2, 1)
        assert -(z * z) == desc(-1, 0, 0)

    def test_backend_mismatch(self):
        """Exact and approx polynomials do not mix."""
        with pytest.raises(BackendMismatch):
            z + Polynomial.identity(Backend.APPROX)

    def test_monic(self):
        assert desc(1, 5, 6).is_monic
        assert not desc(2, 5, 6).is_monic
        assert not Polynomial(()).is_monic


@pytest.mark.unit
class TestCompose:
    """Composition, iteration and evaluation."""

    def test_compose(self):
        """(z^2 + 1) o (z + 1) = z^2 + 2z + 2."""
        assert compose(desc(1, 0, 1), desc(1, 1)) == desc(1, 2, 2)

    def test_iterate_quadratic(self):
        """(z^2 + z)^2 = z^4 + 2z^3 + 2z^2 + z."""
        assert iterate(desc(1, 1, 0), 2) == desc(1, 2, 2, 1, 0)

    def test_iterate_zero_times_is_identity(self):
        assert iterate(desc(3, 1, 4), 0) == z

    def test_iterate_negative_count(self):
        with pytest.raises(ValueError):
            iterate(z, -1)

    def test_evaluate(self):
        """Horner evaluation stays exact."""
        f = z * z + OMEGA
        assert evaluate(f, 2) == Eisenstein(4, 1)
        assert f(Fraction(1, 2)) == Eisenstein(Fraction(1, 4), 1)

    def test_approx_evaluate(self):
        f = desc(1, 0, 1, backend=Backend.APPROX)
        assert evaluate(f, 1j).value == pytest.approx(0)

    @settings(max_examples=40, deadline=None)
    @given(polynomials(max_degree=2), st.integers(0, 2), st.integers(0, 2))
    def test_semigroup_law(self, f, m, n):
        """f^(m+n) = f^m o f^n."""
        assert iterate(f, m + n) == compose(iterate(f, m), iterate(f, n))

    @settings(max_examples=40, deadline=None)
    @given(polynomials(), polynomials(), polynomials())
    def test_composition_is_associative(self, f, g, h):
        assert compose(f, compose(g, h)) == compose(compose(f, g), h)

    @settings(max_examples=40, deadline=None)
    @given(polynomials(), polynomials(), st.integers(-5, 5))
    def test_evaluation_respects_composition(self, f, g, x):
        """(f o g)(x) = f(g(x))."""
        assert evaluate(compose(f, g), x) == evaluate(f, evaluate(g, x))


@pytest.mark.unit
class TestLinearMap:
    def test_zero_slope_rejected(self):
        with pytest.raises(InvalidLinearMap):
            LinearMap(0, 1)

    def test_inverse(self):
        """L^-1(L(z)) = z."""
        L = LinearMap(2, 3)
        assert L.inverse()(L(5)) == 5
        assert compose(L.inverse().as_polynomial(), L.as_polynomial()) == z

    def test_identity(self):
        assert LinearMap.identity()(7) == 7

    def test_to_backend(self):
        """Exact maps embed into approx; the reverse is refused."""
        L = LinearMap(2, 1).to_backend(Backend.APPROX)
        assert L.a == ApproxComplex(2)
        with pytest.raises(BackendMismatch):
            L.to_backend(Backend.EXACT)


@pytest.mark.unit
class TestConjugate:
    """Linear conjugation and normalization."""

    def test_leading_coefficient_transforms(self):
        """L(z) = 2z sends z^2 to 2z^2."""
        assert conjugate(z * z, LinearMap(2)) == desc(2, 0, 0)

    @settings(max_examples=40, deadline=None)
    @given(quadratics(), linear_maps())
    def test_conjugation_commutes_with_iteration(self, f, L):
        """(L^-1 f L)^2 = L^-1 f^2 L."""
        assert iterate(conjugate(f, L), 2) == conjugate(iterate(f, 2), L)

    def test_normalize_monic_is_identity(self):
        g = desc(1, 2, 3)
        normalized, L = normalize(g)
        assert normalized == g
        assert L == LinearMap.identity()

    def test_normalize_quadratic(self):
        """2z^2 normalizes to z^2 with a = 1/2."""
        normalized, L = normalize(desc(2, 0, 0))
        assert normalized == desc(1, 0, 0)
        assert L.a == Fraction(1, 2)

    def test_normalize_cubic(self):
        """a^2 = 1/4 has the root 1/2 first."""
        g = desc(4, 0, 1, 0)
        normalized, L = normalize(g)
        assert normalized.is_monic
        assert L.a == Fraction(1, 2)
        assert normalized == conjugate(g, L)

    def test_normalize_without_exact_root(self):
        """a^3 = 1/3 has no solution in Q(w)."""
        with pytest.raises(ExactRootUnavailable):
            normalize(desc(3, 0, 0, 1, 0))

    def test_normalize_approx(self):
        """Approx mode always normalizes, leading coefficient pinned to 1."""
        normalized, L = normalize(desc(3, 0, 0, 1, 0, backend=Backend.APPROX))
        assert normalized.leading == ApproxComplex(1)
        assert abs(L.a.value**3 - 1 / 3) < 1e-12

    def test_normalize_constant(self):
        with pytest.raises(DegreeZero):
            normalize(Polynomial.constant(3))

    def test_normalize_degree_one(self):
        """The slope of a linear map is a conjugation invariant."""
        with pytest.raises(NormalizationError):
            normalize(desc(2, 1))
        normalized, _ = normalize(desc(1, 5))
        assert normalized == desc(1, 5)


@pytest.mark.unit
class TestFormatting:
    @pytest.mark.parametrize(
        "poly,expected",
        [
            (
                desc(1, 2, Fraction(3, 2), Fraction(1, 2), Fraction(-7, 16)),
                "z^4+2z^3+3/2z^2+1/2z-7/16",
            ),
            (desc(OMEGA, 0, 0), "w*z^2"),
            (desc(Eisenstein(Fraction(1, 2), 1), 0), "(1/2+w)*z"),
            (desc(-1, 0, 1), "-z^2+1"),
            (Polynomial(()), "0"),
        ],
    )
    def test_format(self, poly, expected):
        assert str(poly) == expected

    def test_close(self):
        """Approximate comparison within tolerance."""
        f = desc(1, 0.5, backend=Backend.APPROX)
        g = desc(1, 0.5 + 1e-13, backend=Backend.APPROX)
        assert close(f, g)
        assert not close(f, desc(1, 0.6, backend=Backend.APPROX))


def _height(f: Polynomial) -> float:
    return max((abs(c) for c in f.coefficients), default=0.0)


def _weight(f: Polynomial) -> float:
    return sum(abs(c) for c in f.coefficients)


def _agrees(approx: Polynomial, exact: Polynomial, scale: float) -> bool:
    """Coefficient-wise agreement within 1e-9 relative to a bound on the terms."""
    assert approx.backend == Backend.APPROX
    size = max(len(approx.coefficients), len(exact.coefficients))
    return all(
        abs(approx.coefficient(k).value - exact.coefficient(k).embed().value)
        <= 1e-9 * max(1.0, scale)
        for k in range(size)
    )


@pytest.mark.unit
class TestBackendConsistency:
    """Approx mode follows exact mode under the embedding w -> exp(2*pi*i/3)."""

    @settings(max_examples=60, deadline=None)
    @given(
        polynomials(coefficients=integer_elements),
        polynomials(coefficients=integer_elements),
    )
    def test_compose(self, f, g):
        scale = _height(f) * max(1.0, _weight(g)) ** f.degree
        assert _agrees(compose(f.embed(), g.embed()), compose(f, g), scale)

    @settings(max_examples=60, deadline=None)
    @given(polynomials(max_degree=2, coefficients=integer_elements))
    def test_iterate(self, f):
        scale = _height(f) * max(1.0, _weight(f)) ** f.degree
        assert _agrees(iterate(f.embed(), 2), iterate(f, 2), scale)

    @settings(max_examples=60, deadline=None)
    @given(polynomials(coefficients=integer_elements), integer_elements)
    def test_evaluate(self, f, x):
        exact = evaluate(f, x).embed().value
        approx = evaluate(f.embed(), x.embed()).value
        scale = _weight(f) * max(1.0, abs(x)) ** f.degree
        assert abs(approx - exact) <= 1e-9 * max(1.0, scale)

    @settings(max_examples=60, deadline=None)
    @given(
        polynomials(coefficients=integer_elements),
        integer_elements.filter(lambda a: not a.is_zero()),
        integer_elements,
    )
    def test_conjugate(self, f, a, b):
        L = LinearMap(a, b)
        scale = _height(f) * (abs(a) + abs(b)) ** f.degree + abs(b)
        assert _agrees(conjugate(f.embed(), L), conjugate(f, L), scale)
