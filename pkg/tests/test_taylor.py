"""Taylor truncation identities and piecewise smoothness preservation."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from supersmooth import (
    InputError,
    basis_spline_space,
    check_commutation,
    check_segment_restriction,
    piecewise_taylor,
    smoothness_constraints,
    taylor_poly,
)
from supersmooth.polynomials import Polynomial, monomials
from supersmooth.splinespace import PiecewisePolynomial


def _random_polynomial(rng, n, degree, center=None):
    coeffs = {}
    for alpha in monomials(n, degree):
        if rng.random() < 0.5:
            coeffs[alpha] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Polynomial(n, coeffs, center)


class TestTaylorPoly:
    def test_identity_on_low_degree(self):
        rng = random.Random(1)
        p = _random_polynomial(rng, 2, 3)
        v = (Fraction(1, 3), Fraction(-1, 2))
        assert taylor_poly(p, v, 3) == p.recentered(v)
        assert taylor_poly(p, v, 7) == p.recentered(v)

    def test_order_zero_is_value(self):
        p = Polynomial(2, {(2, 0): 1, (0, 0): 4})
        v = (Fraction(2), Fraction(0))
        t = taylor_poly(p, v, 0)
        assert t.coeffs == {(0, 0): Fraction(8)}

    def test_truncation_at_origin(self):
        p = Polynomial(2, {(2, 0): 1, (1, 0): 1, (0, 1): 1})
        assert taylor_poly(p, (0, 0), 1) == Polynomial(2, {(1, 0): 1, (0, 1): 1})

    def test_negative_order_rejected(self):
        with pytest.raises(InputError):
            taylor_poly(Polynomial.zero(2), (0, 0), -1)


class TestOperatorAlgebra:
    def test_linearity(self):
        rng = random.Random(2)
        v = (Fraction(1, 2), Fraction(1, 5))
        for _ in range(30):
            p = _random_polynomial(rng, 2, 5)
            q = _random_polynomial(rng, 2, 5)
            a = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            lhs = taylor_poly(p.scaled(a) + q, v, 3)
            rhs = taylor_poly(p, v, 3).scaled(a) + taylor_poly(q, v, 3)
            assert lhs == rhs

    def test_projection_and_nesting(self):
        rng = random.Random(3)
        v = (Fraction(-1, 3), Fraction(2))
        for _ in range(20):
            p = _random_polynomial(rng, 2, 5)
            t3 = taylor_poly(p, v, 3)
            assert taylor_poly(t3, v, 3) == t3
            for rho in (1, 2, 4, 6):
                lhs = taylor_poly(taylor_poly(p, v, rho), v, 3)
                assert lhs == taylor_poly(p, v, min(rho, 3))


class TestCommutation:
    def test_worked_example(self):
        p = Polynomial(2, {(2, 1): 1})
        assert check_commutation(p, (0, 0), 2, (1, 0))

    def test_zero_beta(self):
        p = Polynomial(2, {(2, 1): 1, (0, 1): 3})
        assert check_commutation(p, (1, 2), 2, (0, 0))

    def test_random_instances(self):
        rng = random.Random(4)
        for _ in range(100):
            n = rng.choice([2, 3])
            p = _random_polynomial(rng, n, 5)
            v = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n))
            rho = rng.randint(0, 5)
            beta = [0] * n
            for _ in range(rng.randint(0, rho)):
                beta[rng.randrange(n)] += 1
            assert check_commutation(p, v, rho, tuple(beta))

    def test_hypothesis_violation_rejected(self):
        p = Polynomial(2, {(2, 1): 1})
        with pytest.raises(InputError):
            check_commutation(p, (0, 0), 1, (2, 0))


class TestSegmentRestriction:
    def test_equal_functions(self):
        rng = random.Random(5)
        f = _random_polynomial(rng, 2, 4)
        assert check_segment_restriction(f, f, (0, 0), (1, 1), 2, 3)

    def test_constructed_hypothesis_2d(self):
        # g = f + y^{r+1} h matches f to order r along the x-axis
        rng = random.Random(6)
        for r in range(3):
            f = _random_polynomial(rng, 2, 4)
            h = _random_polynomial(rng, 2, 2)
            bump = Polynomial(2, {(0, 1): 1}) ** (r + 1) * h
            g = f + bump
            for rho in (0, r, r + 2, 5):
                assert check_segment_restriction(f, g, (0, 0), (3, 0), r, rho)

    def test_constructed_hypothesis_3d(self):
        rng = random.Random(7)
        r = 2
        f = _random_polynomial(rng, 3, 3)
        h = _random_polynomial(rng, 3, 1)
        # the plane {y = 0} contains the segment from (0,0,0) to (1,0,0)
        plane = Polynomial(3, {(0, 1, 0): 1})
        g = f + plane ** (r + 1) * h
        assert check_segment_restriction(f, g, (0, 0, 0), (1, 0, 0), r, 4)

    def test_constructed_hypothesis_mixed_forms_3d(self):
        # the segment is cut out by two planes; mixed products of total power
        # r+1 in the two forms also satisfy the matching hypothesis
        rng = random.Random(17)
        r = 1
        f = _random_polynomial(rng, 3, 3)
        h = _random_polynomial(rng, 3, 1)
        plane_y = Polynomial(3, {(0, 1, 0): 1})
        plane_z = Polynomial(3, {(0, 0, 1): 1})
        g = f + plane_y * plane_z * h  # vanishes to order r+1 = 2 on the segment
        assert check_segment_restriction(f, g, (0, 0, 0), (1, 0, 0), r, 5)

    def test_degenerate_segment_rejected(self):
        f = Polynomial.zero(2)
        with pytest.raises(InputError):
            check_segment_restriction(f, f, (1, 1), (1, 1), 0, 0)

    def test_detects_violations(self):
        # without the divisibility construction the conclusion generally fails
        f = Polynomial.zero(2)
        g = Polynomial(2, {(0, 1): 1})  # derivative mismatch along the segment
        assert not check_segment_restriction(f, g, (0, 0), (1, 0), 1, 2)


class TestPiecewiseTaylor:
    def test_replicated_polynomial(self, ct_cell):
        rng = random.Random(8)
        v = ct_cell.center_point
        p = _random_polynomial(rng, 2, 4, v)
        s = PiecewisePolynomial(ct_cell, (p, p, p))
        t = piecewise_taylor(s, 2)
        expected = taylor_poly(p, v, 2)
        assert all(piece == expected for piece in t.pieces)

    def test_high_order_is_identity(self, ct_cell):
        basis = basis_spline_space(ct_cell, 3, 1)
        for s in basis:
            assert piecewise_taylor(s, 3) == s
            assert piecewise_taylor(s, 9) == s

    def test_preserves_face_smoothness(self, ct_cell, two_cell_2d):
        # truncations of S_d^r members stay in S^r, every order, exactly
        for cell in (ct_cell, two_cell_2d):
            r, d = 1, 4
            basis = basis_spline_space(cell, d, r)
            for rho in range(d + 1):
                system = smoothness_constraints(cell, max(rho, r), r)
                truncated = [piecewise_taylor(s, rho) for s in basis]
                assert system.all_satisfied(truncated)
