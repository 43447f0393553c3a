"""Tests for the generic triangular iterative-root solver."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iterroots.errors import DegreeZero, InvalidDegreeSpec, NotMonic
from iterroots.field import OMEGA, Backend
from iterroots.poly import Polynomial, iterate
from iterroots.quartic import QuarticCoeffs, curve_point, sqrt_all, triple_roots
from iterroots.solver import (
    Obstruction,
    SolveRequest,
    residual,
    solve,
    solve_any_degree,
)
from tests.strategies import small_rationals


def desc(*coefficients, backend=Backend.EXACT):
    return Polynomial.from_descending(coefficients, backend)


Z4 = desc(1, 0, 0, 0, 0)
PHI_IMAGE = desc(1, 2, 2, 1, 0)


@st.composite
def monic(draw, degree: int):
    lower = draw(st.lists(small_rationals, min_size=degree, max_size=degree))
    return Polynomial(tuple(lower) + (1,))


@pytest.mark.unit
class TestResidual:
    def test_exact_root(self):
        assert residual(desc(1, 0, 0), 2, Z4) == 0
        assert residual(desc(1, 1, 0), 2, PHI_IMAGE) == 0

    def test_single_coefficient_off(self):
        assert residual(desc(1, 0, 0), 2, desc(1, 0, 0, 1, 0)) == 1

    def test_huge_exact_coefficients(self):
        f = desc(1, 10**200, 0)
        g = iterate(f, 2)
        assert residual(f, 2, g) == 0.0
        assert residual(desc(1, 0, 0), 2, g) == math.inf


@pytest.mark.unit
class TestSolve:
    def test_phi_image(self):
        """Only z^2 + z squares to z^4 + 2z^3 + 2z^2 + z."""
        result = solve(SolveRequest(PHI_IMAGE, 2, 2))
        assert result.roots == (desc(1, 1, 0),)
        assert result.complete
        assert result.obstruction is None
        assert result.least_orders == (2,)
        assert result.residuals == (0.0,)

    def test_z8_cube_root_incomplete(self):
        """c^7 = 1 has only c = 1 in Q(w)."""
        result = solve(SolveRequest(desc(1, *([0] * 8)), 2, 3))
        assert result.roots == (desc(1, 0, 0),)
        assert not result.complete

    def test_no_root(self):
        result = solve(SolveRequest(desc(1, 0, 0, 1, 0), 2, 2))
        assert result.roots == ()
        assert result.obstruction == Obstruction.RESIDUAL_FAILURE

    def test_degree_mismatch(self):
        result = solve(SolveRequest(desc(1, 0, 0, 0, 0, 1), 2, 2))
        assert result.obstruction == Obstruction.DEGREE_MISMATCH
        assert "2^2 = 4" in result.detail

    def test_z4_has_three_square_roots(self):
        result = solve(SolveRequest(Z4, 2, 2))
        assert result.roots == (
            desc(1, 0, 0),
            desc(OMEGA, 0, 0),
            desc(OMEGA * OMEGA, 0, 0),
        )

    def test_curve_point_matches_triple_roots(self):
        beta = Fraction(-5, 3)
        g = curve_point(beta).to_polynomial()
        result = solve(SolveRequest(g, 2, 2))
        assert result.roots == tuple(r.to_polynomial() for r in triple_roots(beta))

    def test_non_monic_target(self):
        """2z^2 + z is found from c^3 = 8."""
        f = desc(2, 1, 0)
        result = solve(SolveRequest(iterate(f, 2), 2, 2))
        assert f in result.roots
        assert result.complete

    def test_leading_coefficient_without_root(self):
        with pytest.raises(NotMonic):
            solve(SolveRequest(desc(2, 0, 0, 0, 0), 2, 2))

    def test_linear_target_delegates(self):
        """e = 1 solves c^r = a and the shift in closed form."""
        result = solve(SolveRequest(desc(4, 3), 1, 2))
        assert result.roots == (desc(2, 1), desc(-2, -3))

    def test_translation_roots(self):
        """z + 1 has square root z + 1/2 and cube root z + 1/3."""
        result = solve(SolveRequest(desc(1, 1), 1, 2))
        assert result.roots == (desc(1, Fraction(1, 2)),)
        result = solve(SolveRequest(desc(1, 1), 1, 3))
        assert desc(1, Fraction(1, 3)) in result.roots

    @pytest.mark.parametrize("e,r", [(0, 2), (2, 1), (2, 13)])
    def test_invalid_degree_spec(self, e, r):
        with pytest.raises(InvalidDegreeSpec):
            solve(SolveRequest(Z4, e, r))

    def test_constant_target(self):
        with pytest.raises(DegreeZero):
            solve(SolveRequest(Polynomial.constant(3), 2, 2))

    def test_cubic_square_root(self):
        """z^3 + z + 1 is recovered from its second iterate."""
        f = desc(1, 0, 1, 1)
        result = solve(SolveRequest(iterate(f, 2), 3, 2))
        assert f in result.roots
        assert not result.complete

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from([2, 3]).flatmap(monic))
    def test_constructed_instances(self, f):
        """solve(f^2) contains f, with zero residual."""
        result = solve(SolveRequest(iterate(f, 2), f.degree, 2))
        assert f in result.roots
        assert all(x == 0 for x in result.residuals)

    def test_agrees_with_sqrt_all(self):
        for coeffs in (
            QuarticCoeffs(2, 2, 1, 0),
            QuarticCoeffs(0, 0, 1, 0),
            curve_point(OMEGA),
            QuarticCoeffs(1, 2, 3, 4),
        ):
            expected = tuple(r.to_polynomial() for r in sqrt_all(coeffs).roots)
            assert solve(SolveRequest(coeffs.to_polynomial(), 2, 2)).roots == expected

    def test_huge_exact_coefficients(self):
        """Verification stays exact when coefficients overflow a double."""
        f = desc(1, 10**200, 0)
        result = solve(SolveRequest(iterate(f, 2), 2, 2))
        assert f in result.roots
        assert result.residuals[result.roots.index(f)] == 0.0

    def test_approx_mode(self):
        g = iterate(desc(1, Fraction(1, 2), -3), 2)
        result = solve(SolveRequest(g, 2, 2, Backend.APPROX))
        assert result.count == 1
        assert result.residuals[0] < 1e-6
        assert result.roots[0].backend == Backend.APPROX


@pytest.mark.unit
class TestSolveAnyDegree:
    @pytest.mark.parametrize("degree", [2, 3, 5, 7])
    def test_prime_degree(self, degree):
        g = Polynomial.monomial(1, degree)
        result = solve_any_degree(g, 2)
        assert result.obstruction == Obstruction.PRIME_DEGREE

    def test_composite_non_power(self):
        result = solve_any_degree(Polynomial.monomial(1, 6), 2)
        assert result.obstruction == Obstruction.DEGREE_MISMATCH

    def test_finds_quadratic_roots(self):
        result = solve_any_degree(PHI_IMAGE, 2)
        assert result.roots == (desc(1, 1, 0),)

    def test_linear(self):
        result = solve_any_degree(desc(4, 3), 2)
        assert len(result.roots) == 2

    def test_invalid_order(self):
        with pytest.raises(InvalidDegreeSpec):
            solve_any_degree(PHI_IMAGE, 1)
