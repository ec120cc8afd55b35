"""Taylor truncation about a point and its piecewise version.

Everything here is exact; the checking helpers exist because truncation
commutes with differentiation and preserves equality of restrictions along
segments through the expansion point, which is what makes the piecewise
operator respect C^r face smoothness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .polynomials import MultiIndex, Polynomial
from .splinespace import PiecewisePolynomial


@dataclass(frozen=True)
class TaylorTruncation:
    """Truncation operator: expand about `center` and keep orders <= `order`."""

    center: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise InputError("truncation order must be nonnegative")

    def __call__(self, p: Polynomial) -> Polynomial:
        return p.recentered(self.center).truncated(self.order)


def taylor_poly(p: Polynomial, v, rho: int) -> Polynomial:
    """Degree-rho Taylor truncation of p about v (exact; centered at v)."""
    v = tuple(Fraction(c) for c in v)
    return TaylorTruncation(v, rho)(p)


def piecewise_taylor(s: PiecewisePolynomial, rho: int) -> PiecewisePolynomial:
    """Truncate every piece about the cell vertex."""
    v = s.cell.center_point
    op = TaylorTruncation(v, rho)
    return PiecewisePolynomial(s.cell, tuple(op(p) for p in s.pieces))


def check_commutation(p: Polynomial, v, rho: int, beta: MultiIndex) -> bool:
    """Does D^beta (T_{v,rho} p) equal T_{v,rho-|beta|} (D^beta p) exactly?"""
    beta = tuple(beta)
    if sum(beta) > rho:
        raise InputError("commutation identity requires |beta| <= rho")
    left = taylor_poly(p, v, rho).derivative(beta)
    right = taylor_poly(p.derivative(beta), v, rho - sum(beta))
    return left == right


def check_segment_restriction(f: Polynomial, g: Polynomial, v, w, r: int, rho: int) -> bool:
    """Given that f and g match derivatives of order <= r along the segment
    [v, w], their order-rho truncations about v must do the same; this
    verifies that conclusion instance by instance, exactly."""
    v = tuple(Fraction(c) for c in v)
    w = tuple(Fraction(c) for c in w)
    if v == w:
        raise InputError("segment endpoints must differ")
    tf = taylor_poly(f, v, rho)
    tg = taylor_poly(g, v, rho)
    n = f.n
    for beta in _multi_indices_up_to(n, r):
        lhs = tf.derivative(beta).restricted_to_segment(v, w)
        rhs = tg.derivative(beta).restricted_to_segment(v, w)
        if lhs != rhs:
            return False
    return True


def _multi_indices_up_to(n: int, r: int):
    from .polynomials import monomials

    return monomials(n, r)
