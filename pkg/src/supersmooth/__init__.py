"""Exact spline-space dimensions and vertex supersmoothness over simplicial cells.

The library computes dim S_d^r over a single cell with exact rational
arithmetic, decides degeneracy (S_d^r = Pi_d), determines the maximal order
of supersmoothness at the cell vertex by a certified rank oracle, and
cross-validates the oracle against closed-form dimension formulas.
"""

from .errors import (
    CapReachedError,
    InputError,
    InvalidGeometryError,
    SupersmoothError,
    VerificationError,
)
from .formulas import (
    alfeld_A,
    dim_2d_cell,
    dim_alfeld,
    dim_facet_aligned,
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
from .geometry import (
    Cell,
    CellDiagnostics,
    Element,
    Face,
    LinearForm,
    apply_affine,
    cell_from_dict,
    cell_from_json,
    cell_to_dict,
    cell_to_json,
    count_distinct_slopes_2d,
    interior_faces,
    make_alfeld,
    make_clough_tocher,
    make_facet_split,
    make_split_k_n,
    make_star_cell_2d,
    make_two_cell,
    validate_cell,
)
from .linalg import RationalMatrix, bareiss_nullspace, nullspace, rank
from .polynomials import Polynomial, dim_pi, monomials
from .splinespace import (
    ConstraintSystem,
    MosReport,
    PiecewisePolynomial,
    SpaceReport,
    basis_spline_space,
    default_cap,
    dim_spline_space,
    find_witness,
    mos_oracle,
    smoothness_constraints,
    vertex_smoothness_order,
)
from .taylor import check_commutation, check_segment_restriction, piecewise_taylor, taylor_poly

__version__ = "0.1.0"


def derivative(p: Polynomial, beta) -> Polynomial:
    """Exact partial derivative D^beta of a polynomial."""
    return p.derivative(beta)
