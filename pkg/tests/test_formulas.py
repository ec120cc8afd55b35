"""Closed-form dimension and mos formulas, cross-validated internally."""

from __future__ import annotations

import pytest

from supersmooth import (
    InputError,
    alfeld_A,
    dim_2d_cell,
    dim_alfeld,
    dim_facet_aligned,
    dim_pi,
    dim_two_cell,
    facet_P,
    mos_2d,
    mos_alfeld,
    mos_facet,
    mos_two_cell,
    rho,
    tau,
    wf_bounds,
)


class TestTau:
    def test_values(self):
        assert tau(3, 1, 1) == 0
        assert tau(3, 1, 2) == 2
        assert tau(1, 0, 5) == -1

    def test_bad_args(self):
        with pytest.raises(InputError):
            tau(0, 0, 1)
        with pytest.raises(InputError):
            tau(3, 0, 0)


class TestDim2D:
    def test_values(self):
        assert dim_2d_cell(3, 3, 3, 1) == 12
        assert dim_2d_cell(6, 3, 2, 1) == 9

    def test_d_equals_r_is_pi(self):
        for m in range(3, 8):
            for m_v in range(2, m + 1):
                for r in range(4):
                    assert dim_2d_cell(m, m_v, r, r) == dim_pi(2, r)

    def test_both_closed_forms_agree_on_sweep(self):
        # dim_2d_cell evaluates both published forms and asserts equality
        for m in range(3, 9):
            for m_v in range(2, m + 1):
                for r in range(0, 4):
                    for d in range(r, r + 7):
                        assert dim_2d_cell(m, m_v, d, r) >= dim_pi(2, d)

    def test_bad_args(self):
        with pytest.raises(InputError):
            dim_2d_cell(2, 2, 3, 1)
        with pytest.raises(InputError):
            dim_2d_cell(4, 1, 3, 1)
        with pytest.raises(InputError):
            dim_2d_cell(4, 2, 1, 2)


class TestMos2D:
    def test_values(self):
        assert mos_2d(3, 3, 1) == 2
        assert mos_2d(4, 3, 2) == 2
        assert mos_2d(5, 5, 4) == 5

    def test_shekhtman_sorokina_threshold(self):
        # one extra smoothness order at degree r iff r >= m - 2
        for m in range(3, 9):
            for r in range(0, 10):
                assert (mos_2d(m, m, r) >= r + 1) == (r >= m - 2)

    def test_matches_largest_degenerate_degree(self):
        for m in range(3, 7):
            for m_v in range(2, m + 1):
                for r in range(4):
                    mos = mos_2d(m, m_v, r)
                    assert dim_2d_cell(m, m_v, mos, r) == dim_pi(2, mos)
                    assert dim_2d_cell(m, m_v, mos + 1, r) > dim_pi(2, mos + 1)


class TestRho:
    def test_values(self):
        assert rho(3, 1) == 3
        assert rho(4, 3) == 9

    def test_2d_matches_clough_tocher_formula(self):
        for r in range(8):
            assert rho(2, r) == r + (r + 1) // 2 == mos_2d(3, 3, r)


class TestAlfeld:
    def test_A_values(self):
        assert alfeld_A(3, 2, 1) == 0
        assert alfeld_A(3, 4, 1) == 3
        assert alfeld_A(2, 3, 1) == 2

    def test_dim_values(self):
        assert dim_alfeld(3, 2, 1) == 10
        assert dim_alfeld(3, 4, 1) == 38

    def test_2d_matches_cell_formula(self):
        for r in range(4):
            for d in range(r, 9):
                assert dim_alfeld(2, d, r) == dim_2d_cell(3, 3, d, r)

    def test_mos(self):
        assert mos_alfeld(3, 1) == 3
        assert mos_alfeld(3, 2) == 4
        assert mos_alfeld(2, 1) == 2

    def test_mos_matches_largest_degenerate_degree(self):
        for n in (2, 3, 4):
            for r in range(4):
                mos = mos_alfeld(n, r)
                assert alfeld_A(n, mos, r) == 0
                assert alfeld_A(n, mos + 1, r) > 0

    def test_A_monotone_in_degree(self):
        for n in (2, 3, 4):
            for r in range(4):
                values = [alfeld_A(n, d, r) for d in range(r, r + 12)]
                assert values == sorted(values)


class TestWfBounds:
    def test_values(self):
        assert wf_bounds(2, 3, 1) == (2, 3)
        assert wf_bounds(2, 4, 2) == (3, 5)

    def test_tight_when_k_equals_n(self):
        for n in (2, 3, 4):
            for r in range(4):
                lo, hi = wf_bounds(n, n, r)
                assert lo == hi == rho(n, r)

    def test_k1_rejected(self):
        with pytest.raises(InputError):
            wf_bounds(1, 3, 1)


class TestFacet:
    def test_P_and_dim_values(self):
        assert facet_P(3, 2, 1) == 0
        assert dim_facet_aligned(3, 2, 1) == 10
        assert facet_P(3, 3, 1) == 2
        assert dim_facet_aligned(3, 3, 1) == 28

    def test_mos(self):
        assert mos_facet(3, 1) == 2
        for n in (2, 3, 4):
            for r in range(4):
                assert mos_facet(n, r) == rho(n - 1, r)

    def test_mos_matches_largest_degenerate_degree(self):
        for n in (2, 3, 4):
            for r in range(4):
                mos = mos_facet(n, r)
                extra = alfeld_A(n, mos, r) + (n + 1) * facet_P(n, mos, r)
                extra_next = alfeld_A(n, mos + 1, r) + (n + 1) * facet_P(n, mos + 1, r)
                assert extra == 0 and extra_next > 0

    def test_P_monotone_in_degree(self):
        for n in (2, 3, 4):
            for r in range(4):
                values = [facet_P(n, d, r) for d in range(r, r + 12)]
                assert values == sorted(values)


class TestTwoCell:
    def test_dim_values(self):
        assert dim_two_cell(2, 2, 0) == 7
        assert dim_two_cell(2, 1, 0) == 3

    def test_mos_formulas(self):
        for r in range(6):
            assert mos_two_cell(2, r) == 2 * r + 1
            assert mos_two_cell(3, r) == 3 * r + 2

    def test_mos_matches_largest_degenerate_degree(self):
        for n in (2, 3):
            for r in range(4):
                mos = mos_two_cell(n, r)
                assert dim_two_cell(n, mos, r) == dim_pi(n, mos)
                assert dim_two_cell(n, mos + 1, r) > dim_pi(n, mos + 1)
