"""Closed-form dimension and maximal-supersmoothness formulas per cell family.

These are the second leg of the oracle-versus-formula cross-validation; they
take validated integer inputs only and do no geometry.  Binomials with upper
index below the lower index (or negative) evaluate to zero, which the
even-smoothness sums rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InputError
from .polynomials import dim_pi


def binom0(a: int, b: int) -> int:
    """comb(a, b), but 0 whenever a < b or an index is negative."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class FormulaResult:
    family: str
    value: int | None
    bounds: tuple[int, int] | None
    inputs: dict

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise InputError("formula values are nonnegative")
        if self.bounds is not None and self.bounds[0] > self.bounds[1]:
            raise InputError("lower bound exceeds upper bound")


# ---------------------------------------------------------------------------
# 2D cells


def tau(m_v: int, r: int, j: int) -> int:
    """Per-degree constraint surplus j(m_v - 1) - (r + 1); may be negative."""
    if m_v < 1 or r < 0 or j < 1:
        raise InputError("need m_v >= 1, r >= 0, j >= 1")
    return j * (m_v - 1) - (r + 1)


def _check_2d_args(m: int, m_v: int, d: int, r: int) -> None:
    if m < 3:
        raise InputError("2D interior cells have at least 3 triangles")
    if not 2 <= m_v <= m:
        raise InputError("need 2 <= m_v <= m")
    if not 0 <= r <= d:
        raise InputError("need 0 <= r <= d")


def dim_2d_cell(m: int, m_v: int, d: int, r: int) -> int:
    """Dimension of S_d^r over a 2D cell with m triangles and m_v edge slopes.

    Evaluated in both equivalent closed forms; disagreement would be a bug.
    """
    _check_2d_args(m, m_v, d, r)
    pos = sum(max(tau(m_v, r, j), 0) for j in range(1, d - r + 1))
    value = dim_pi(2, d) + (m - m_v) * dim_pi(2, d - r - 1) + pos
    neg = sum(max(-tau(m_v, r, j), 0) for j in range(1, d - r + 1))
    alt = comb(r + 2, 2) + m * comb(d - r + 1, 2) + neg
    if value != alt:
        raise AssertionError(f"2D dimension formulas disagree: {value} vs {alt}")
    return value


def mos_2d(m: int, m_v: int, r: int) -> int:
    """Maximal supersmoothness order at v for a 2D cell."""
    _check_2d_args(m, m_v, r, r)
    if m_v == m:
        return r + (r + 1) // (m - 1)
    return r


# ---------------------------------------------------------------------------
# Alfeld split in R^n


def rho(n: int, r: int) -> int:
    """r + (n-1) * floor((r+1)/2), the Alfeld-split supersmoothness order."""
    if n < 1 or r < 0:
        raise InputError("need n >= 1, r >= 0")
    return r + (n - 1) * ((r + 1) // 2)


def _check_family_args(n: int, d: int, r: int) -> None:
    if n < 2:
        raise InputError("need n >= 2")
    if not 0 <= r <= d:
        raise InputError("need 0 <= r <= d")


def alfeld_A(n: int, d: int, r: int) -> int:
    """Number of true-spline directions of S_d^r over the Alfeld split."""
    _check_family_args(n, d, r)
    if r % 2 == 1:
        return n * binom0(d + n - (r + 1) * (n + 1) // 2, n)
    base = d - r * (n + 1) // 2
    return sum(binom0(base + i, n) for i in range(n))


def dim_alfeld(n: int, d: int, r: int) -> int:
    return dim_pi(n, d) + alfeld_A(n, d, r)


def mos_alfeld(n: int, r: int) -> int:
    if n < 2 or r < 0:
        raise InputError("need n >= 2, r >= 0")
    return rho(n, r)


# ---------------------------------------------------------------------------
# Delta_{k,n} splits (Worsey-Farin family)


def wf_bounds(k: int, n: int, r: int) -> tuple[int, int]:
    """Lower and upper bounds for mos over a Delta_{k,n} split, 2 <= k <= n."""
    if not 2 <= k <= n:
        raise InputError("bounds hold for 2 <= k <= n")
    if r < 0:
        raise InputError("need r >= 0")
    return rho(k, r), rho(n, r)


# ---------------------------------------------------------------------------
# aligned facet split Delta_{n-1,n}


def facet_P(n: int, d: int, r: int) -> int:
    _check_family_args(n, d, r)
    if r % 2 == 1:
        return (n - 1) * binom0(d + n - (r + 1) * n // 2, n)
    base = d + 1 - r * n // 2
    return sum(binom0(base + i, n) for i in range(n - 1))


def dim_facet_aligned(n: int, d: int, r: int) -> int:
    return dim_pi(n, d) + alfeld_A(n, d, r) + (n + 1) * facet_P(n, d, r)


def mos_facet(n: int, r: int) -> int:
    if n < 2 or r < 0:
        raise InputError("need n >= 2, r >= 0")
    return rho(n - 1, r)


# ---------------------------------------------------------------------------
# 2-cells


def dim_two_cell(n: int, d: int, r: int) -> int:
    _check_family_args(n, d, r)
    return dim_pi(n, d) + dim_pi(n, d - n * (r + 1))


def mos_two_cell(n: int, r: int) -> int:
    if n < 2 or r < 0:
        raise InputError("need n >= 2, r >= 0")
    return n * (r + 1) - 1
