"""Shared cells and helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from supersmooth import (
    make_alfeld,
    make_clough_tocher,
    make_facet_split,
    make_split_k_n,
    make_star_cell_2d,
    make_two_cell,
)

UNIT_TRIANGLE = [("0", "0"), ("1", "0"), ("0", "1")]
UNIT_TET = [("0", "0", "0"), ("1", "0", "0"), ("0", "1", "0"), ("0", "0", "1")]
UNIT_4SIMPLEX = [
    ("0", "0", "0", "0"),
    ("1", "0", "0", "0"),
    ("0", "1", "0", "0"),
    ("0", "0", "1", "0"),
    ("0", "0", "0", "1"),
]

GENERIC_V2 = ("1/4", "1/3")
GENERIC_V3 = ("1/4", "1/5", "1/6")


@pytest.fixture(scope="session")
def ct_cell():
    """Clough-Tocher split with a generic interior point (all slopes distinct)."""
    return make_clough_tocher(UNIT_TRIANGLE, GENERIC_V2)


@pytest.fixture(scope="session")
def square_star():
    """The +-e1, +-e2 star: m = 4 triangles but only m_v = 2 slopes."""
    return make_star_cell_2d(("0", "0"), [("1", "0"), ("0", "1"), ("-1", "0"), ("0", "-1")])


@pytest.fixture(scope="session")
def alfeld3():
    return make_alfeld(3, UNIT_TET, GENERIC_V3)


@pytest.fixture(scope="session")
def alfeld4():
    return make_alfeld(4, UNIT_4SIMPLEX, ("1/6", "1/7", "1/8", "1/9"))


@pytest.fixture(scope="session")
def facet3_aligned():
    return make_facet_split(3, UNIT_TET, GENERIC_V3, aligned=True)


@pytest.fixture(scope="session")
def facet2_aligned():
    return make_facet_split(2, UNIT_TRIANGLE, GENERIC_V2, aligned=True)


@pytest.fixture(scope="session")
def wf_generic():
    """Worsey-Farin split with deterministic generic (non-aligned) points."""
    from supersmooth.cli import _generic_choices
    from supersmooth.geometry import as_point

    pts = [as_point(p) for p in UNIT_TET]
    return make_split_k_n(2, 3, UNIT_TET, _generic_choices(2, 3, pts))


@pytest.fixture(scope="session")
def two_cell_2d():
    return make_two_cell(2, UNIT_TRIANGLE, ("1/4", "1/4"), 2)


@pytest.fixture(scope="session")
def two_cell_3d():
    return make_two_cell(3, UNIT_TET, GENERIC_V3, 0)


def fractions_equal(vec, expected) -> bool:
    return [Fraction(x) for x in vec] == [Fraction(e) for e in expected]
