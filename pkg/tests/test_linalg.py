"""Exact linear algebra: certified rank/nullspace, cross-checks, invariants."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from supersmooth.linalg import (
    RationalMatrix,
    _prime,
    bareiss_nullspace,
    certify_zero_product,
    nullspace,
    nullspace_int_rows,
    rank,
    rank_mod_p,
)

# -- strategies --------------------------------------------------------------

small_fraction = st.builds(
    Fraction,
    st.integers(min_value=-30, max_value=30),
    st.integers(min_value=1, max_value=12),
)


@st.composite
def fraction_matrices(draw, max_rows=6, max_cols=6):
    nrows = draw(st.integers(min_value=1, max_value=max_rows))
    ncols = draw(st.integers(min_value=1, max_value=max_cols))
    rows = draw(
        st.lists(
            st.lists(small_fraction, min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    return rows


def _dot(row, vec):
    return sum((Fraction(a) * b for a, b in zip(row, vec)), Fraction(0))


def _sympy_nullspace(rows):
    mat = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])
    return [
        [Fraction(int(e.p), int(e.q)) for e in vec]
        for vec in mat.nullspace()
    ]


# -- pinned examples ---------------------------------------------------------


class TestRank:
    def test_identity(self):
        m = RationalMatrix.from_rows([[int(i == j) for j in range(5)] for i in range(5)])
        assert rank(m) == 5

    def test_zero(self):
        m = RationalMatrix.from_rows([[0, 0], [0, 0], [0, 0]])
        assert rank(m) == 0

    def test_hand_eliminated(self):
        rows = [[1, 2], [2, 4], [1, 0]]
        # hand elimination: R2 - 2 R1 = 0, R3 - R1 = (0, -2) -> two pivots
        m = RationalMatrix.from_rows(rows)
        assert rank(m) == 2
        assert sympy.Matrix(rows).rank() == 2


class TestNullspace:
    def test_identity_empty(self):
        m = RationalMatrix.from_rows([[int(i == j) for j in range(4)] for i in range(4)])
        assert nullspace(m) == []

    def test_zero_matrix(self):
        m = RationalMatrix.from_rows([[0] * 4 for _ in range(3)])
        basis = nullspace(m)
        assert len(basis) == 4
        for f, vec in enumerate(basis):
            assert vec[f] == 1 and sum(map(abs, vec)) == 1

    def test_single_row(self):
        rows = [[1, 1, 0]]
        m = RationalMatrix.from_rows(rows)
        basis = nullspace(m)
        assert len(basis) == 2
        for vec in basis:
            assert _dot(rows[0], vec) == 0

    def test_matches_sympy_convention(self):
        rng = random.Random(20240810)
        for _ in range(25):
            nrows = rng.randint(1, 5)
            ncols = rng.randint(1, 6)
            rows = [
                [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(ncols)]
                for _ in range(nrows)
            ]
            ours = nullspace(RationalMatrix.from_rows(rows))
            theirs = _sympy_nullspace(rows)
            assert ours == theirs


class TestCrossChecks:
    @settings(max_examples=60, deadline=None)
    @given(fraction_matrices())
    def test_rank_nullity_and_exactness(self, rows):
        m = RationalMatrix.from_rows(rows)
        basis = nullspace(m)
        assert rank(m) + len(basis) == m.cols
        for vec in basis:
            for row in rows:
                assert _dot(row, vec) == 0

    @settings(max_examples=40, deadline=None)
    @given(fraction_matrices())
    def test_bareiss_agrees(self, rows):
        m = RationalMatrix.from_rows(rows)
        modular = nullspace(m)
        cross = bareiss_nullspace(m)
        assert len(cross) == len(modular)
        for vec in cross:
            for row in rows:
                assert _dot(row, vec) == 0

    @settings(max_examples=40, deadline=None)
    @given(fraction_matrices(), st.randoms(use_true_random=False))
    def test_rank_invariances(self, rows, rng):
        m = RationalMatrix.from_rows(rows)
        base = rank(m)
        permuted = list(rows)
        rng.shuffle(permuted)
        cols = list(range(len(rows[0])))
        rng.shuffle(cols)
        scaled = [
            [Fraction(rng.choice([1, 2, -1, 3])) * row[c] for c in cols] for row in permuted
        ]
        assert rank(RationalMatrix.from_rows(scaled)) == base

    @settings(max_examples=30, deadline=None)
    @given(fraction_matrices())
    def test_modular_prepass_never_exceeds_rank(self, rows):
        m = RationalMatrix.from_rows(rows)
        exact = rank(m)
        for index in range(3):
            assert rank_mod_p(m.int_rows(), m.cols, _prime(index)) <= exact


class TestVerification:
    def test_certify_zero_product(self):
        rows = [((0, 1), (1, -1)), ((1, 2), (1, -1))]
        ok = certify_zero_product(rows, 3, [[Fraction(1), Fraction(1), Fraction(1)]])
        assert ok
        bad = certify_zero_product(rows, 3, [[Fraction(1), Fraction(2), Fraction(2)]])
        assert not bad

    def test_huge_entry_vectors(self):
        # denominators force many verification primes via the modulus bound
        big = Fraction(1, 10**40)
        rows = [((0, 1), (1, -1))]
        assert certify_zero_product(rows, 2, [[big, big]])
        assert not certify_zero_product(rows, 2, [[big, -big]])


class TestStorage:
    def test_fill_ratio_threshold(self):
        dense = RationalMatrix.from_rows([[1, 2], [3, 4]])
        assert dense.storage == "dense"
        sparse = RationalMatrix.from_rows([[1, 0, 0, 0], [0, 0, 0, 0]])
        assert sparse.storage == "sparse"

    def test_entry_reports_original_rationals(self):
        m = RationalMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)]])
        assert m.entry(0, 0) == Fraction(1, 2)
        assert m.entry(0, 1) == Fraction(1, 3)
        assert m.entry(0, 0).denominator > 0

    def test_int_rows_roundtrip(self):
        rows = [[Fraction(1, 2), 0, Fraction(-2, 3)], [0, 1, 0]]
        m = RationalMatrix.from_rows(rows)
        rebuilt = RationalMatrix.from_int_rows(m.int_rows(), m.cols)
        assert rank(rebuilt) == rank(m)
        assert nullspace(rebuilt) == nullspace(m)


class TestEngineEdges:
    def test_empty_rows(self):
        assert len(nullspace_int_rows([], 3)) == 3

    def test_zero_columns(self):
        assert nullspace_int_rows([((), ())], 0) == []

    def test_big_integer_entries(self):
        rows = [((0, 1), (10**50, -(10**50)))]
        basis = nullspace_int_rows(rows, 2)
        assert len(basis) == 1
        assert basis[0] == [Fraction(1), Fraction(1)]
