"""Piecewise polynomials, smoothness constraints and the degeneracy oracle.

Pieces are stored in the monomial basis shifted to the cell center v, so the
C^r conditions across each interior face (all faces contain v) become exact
divisibility conditions on differences of pieces: after the integer linear
substitution sending the face hyperplane to {y_0 = 0}, every transformed
coefficient with y_0-exponent <= r must vanish.  The substitution is
homogeneous, so the constraint matrix is graded by total degree.

The spline space dimension is dim Pi_d plus the nullity of the quotient
system over piece differences (the global polynomials are quotiented out);
the stacked full-system matrix is exposed unchanged via ConstraintSystem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import CapReachedError, InputError
from .geometry import Cell, format_scalar, integer_normal, interior_faces, parse_scalar, primitive_direction
from .polynomials import (
    MultiIndex,
    Polynomial,
    dim_pi,
    monomials,
    monomials_of_degree,
)

# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class PiecewisePolynomial:
    """One polynomial per cell element, all centered at the cell vertex."""

    cell: Cell
    pieces: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.pieces) != len(self.cell.elements):
            raise InputError("piece count must match the element count")
        v = self.cell.center_point
        for p in self.pieces:
            if p.center != v or p.n != self.cell.dimension:
                raise InputError("pieces must be centered at the cell vertex")

    @property
    def max_degree(self) -> int:
        return max((p.total_degree for p in self.pieces), default=-1)

    def pieces_all_equal(self) -> bool:
        return all(p == self.pieces[0] for p in self.pieces[1:])

    def stacked_vector(self, d: int) -> list[Fraction]:
        out: list[Fraction] = []
        for p in self.pieces:
            out.extend(p.coefficient_vector(d))
        return out

    def to_dict(self) -> dict:
        return {
            "dimension": self.cell.dimension,
            "center": [format_scalar(c) for c in self.cell.center_point],
            "pieces": [
                {",".join(map(str, a)): format_scalar(c) for a, c in sorted(p.coeffs.items())}
                for p in self.pieces
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, cell: Cell) -> "PiecewisePolynomial":
        try:
            n = int(data["dimension"])
            center = tuple(parse_scalar(c) for c in data["center"])
            if n != cell.dimension or center != cell.center_point:
                raise InputError("spline data does not match the cell")
            pieces = []
            for entry in data["pieces"]:
                coeffs = {}
                for key, val in entry.items():
                    alpha = tuple(int(t) for t in key.split(","))
                    coeffs[alpha] = parse_scalar(val)
                pieces.append(Polynomial(n, coeffs, center))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed spline data: {exc}") from exc
        return cls(cell, tuple(pieces))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class SpaceReport:
    n: int
    d: int
    r: int
    dimension: int
    degenerate: bool


@dataclass(frozen=True)
class MosReport:
    r: int
    mos: int
    exact: bool
    trace: tuple[tuple[int, int, bool], ...]  # (d, dimension, degenerate)
    witness: PiecewisePolynomial | None


@dataclass(frozen=True)
class ConstraintSystem:
    """Stacked exact linear system whose nullspace is S_d^r of the cell."""

    cell: Cell
    d: int
    r: int
    matrix: linalg.RationalMatrix
    row_meta: tuple[tuple[int, MultiIndex], ...]  # (face index, beta)
    faces: tuple

    def satisfied_by(self, spline: PiecewisePolynomial) -> bool:
        """Exact check that the spline meets every constraint row."""
        return self.all_satisfied([spline])

    def all_satisfied(self, splines) -> bool:
        vectors = [s.stacked_vector(self.d) for s in splines]
        return linalg.certify_zero_product(self.matrix.int_rows(), self.matrix.cols, vectors)


# ---------------------------------------------------------------------------
# graded assembly
#
# The substitution per face is linear and homogeneous, so the constraint
# matrix is block-diagonal by total degree; every computation below works one
# degree block at a time, and degree-d sweeps reuse all lower blocks.


@lru_cache(maxsize=64)
def _face_frames(cell: Cell):
    """Per interior face, the integer substitution matrix B: column 0 is the
    primitive face normal, the remaining columns span the face through v."""
    n = cell.dimension
    v = cell.center_point
    faces = tuple(interior_faces(cell))
    frames = []
    for _, _, face in faces:
        others = [i for i in face.vertex_ids if i != cell.center]
        dirs = [
            primitive_direction([cell.points[i][c] - v[c] for c in range(n)]) for i in others
        ]
        normal = integer_normal(dirs)
        frames.append(tuple(tuple([normal[i]] + [dr[i] for dr in dirs]) for i in range(n)))
    return faces, tuple(frames)


@lru_cache(maxsize=512)
def _face_degree_data(cell: Cell, k: int):
    """Degree-k expansion data per face.

    Returns (expansions, rows) where expansions[f][alpha] = {beta: coeff} for
    |alpha| = k, and rows[f][beta_local] = [(alpha_local, coeff), ...] with
    local indices into monomials_of_degree(n, k).
    """
    n = cell.dimension
    faces, frames = _face_frames(cell)
    monos_k = monomials_of_degree(n, k)
    index_k = {a: i for i, a in enumerate(monos_k)}
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if k == 0:
        zero = (0,) * n
        expansions = tuple({zero: {zero: 1}} for _ in faces)
        rows = tuple([[(0, 1)]] for _ in faces)
        return expansions, rows
    prev_expansions, _ = _face_degree_data(cell, k - 1)
    expansions = []
    rows = []
    for f_idx in range(len(faces)):
        bmat = frames[f_idx]
        prev = prev_expansions[f_idx]
        cur_exp: dict[MultiIndex, dict[MultiIndex, int]] = {}
        cur_rows: list[list[tuple[int, int]]] = [[] for _ in monos_k]
        for alpha in monos_k:
            i = next(c for c in range(n) if alpha[c])
            src = prev[tuple(a - u for a, u in zip(alpha, unit[i]))]
            acc: dict[MultiIndex, int] = {}
            for beta, coeff in src.items():
                for j in range(n):
                    bij = bmat[i][j]
                    if bij:
                        key = tuple(b + u for b, u in zip(beta, unit[j]))
                        acc[key] = acc.get(key, 0) + coeff * bij
            acc = {b: c for b, c in acc.items() if c}
            cur_exp[alpha] = acc
            a_loc = index_k[alpha]
            for beta, coeff in acc.items():
                cur_rows[index_k[beta]].append((a_loc, coeff))
        expansions.append(cur_exp)
        rows.append(cur_rows)
    return tuple(expansions), tuple(rows)


def _check_space_args(cell: Cell, d: int, r: int) -> None:
    if not isinstance(cell, Cell):
        raise InputError("expected a Cell")
    if len(cell.elements) < 2:
        raise InputError("spline spaces need a cell with at least two elements")
    if r < 0 or d < r:
        raise InputError("need 0 <= r <= d")


def _block_rows(cell: Cell, r: int, k: int):
    """Sparse integer rows of the degree-k block of the quotient system
    (unknowns are the piece differences z_p = piece_p - piece_0)."""
    faces, _ = _face_frames(cell)
    _, face_rows = _face_degree_data(cell, k)
    n = cell.dimension
    monos_k = monomials_of_degree(n, k)
    c_k = len(monos_k)
    rows: list[linalg.IntRow] = []
    for f_idx, (ei, ej, _) in enumerate(faces):
        for b_loc, entries in enumerate(face_rows[f_idx]):
            if monos_k[b_loc][0] > r:
                continue
            cols: list[int] = []
            vals: list[int] = []
            if ei != 0:
                start = (ei - 1) * c_k
                for a_loc, coeff in entries:
                    cols.append(start + a_loc)
                    vals.append(coeff)
            if ej != 0:
                start = (ej - 1) * c_k
                for a_loc, coeff in entries:
                    cols.append(start + a_loc)
                    vals.append(-coeff)
            rows.append((tuple(cols), tuple(vals)))
    return rows, (len(cell.elements) - 1) * c_k


@lru_cache(maxsize=2048)
def _block_nullspace(cell: Cell, r: int, k: int):
    """Certified nullspace of the degree-k quotient block, with free columns."""
    rows, ncols = _block_rows(cell, r, k)
    return linalg.nullspace_with_free(rows, ncols)


def _system_rows(cell: Cell, d: int, r: int, reduced: bool):
    """Sparse integer rows of the full (d, r) constraint system, stacked by
    face then degree; used for the exposed ConstraintSystem."""
    faces, _ = _face_frames(cell)
    n = cell.dimension
    c_full = dim_pi(n, d)
    npieces = len(cell.elements)
    rows: list[linalg.IntRow] = []
    meta: list[tuple[int, MultiIndex]] = []

    def block_start(piece: int) -> int | None:
        if reduced:
            return None if piece == 0 else (piece - 1) * c_full
        return piece * c_full

    per_degree = [_face_degree_data(cell, k)[1] for k in range(d + 1)]
    deg_offset = [dim_pi(n, k - 1) for k in range(d + 1)]
    for f_idx, (ei, ej, _) in enumerate(faces):
        start_i, start_j = block_start(ei), block_start(ej)
        for k in range(d + 1):
            monos_k = monomials_of_degree(n, k)
            offset = deg_offset[k]
            for b_loc, entries in enumerate(per_degree[k][f_idx]):
                beta = monos_k[b_loc]
                if beta[0] > r:
                    continue
                cols: list[int] = []
                vals: list[int] = []
                if start_i is not None:
                    for a_loc, coeff in entries:
                        cols.append(start_i + offset + a_loc)
                        vals.append(coeff)
                if start_j is not None:
                    for a_loc, coeff in entries:
                        cols.append(start_j + offset + a_loc)
                        vals.append(-coeff)
                rows.append((tuple(cols), tuple(vals)))
                meta.append((f_idx, beta))
    ncols = (npieces - 1) * c_full if reduced else npieces * c_full
    return rows, ncols, tuple(meta), faces


def smoothness_constraints(cell: Cell, d: int, r: int) -> ConstraintSystem:
    """The full stacked C^r constraint system for degree-d pieces."""
    _check_space_args(cell, d, r)
    rows, ncols, meta, faces = _system_rows(cell, d, r, reduced=False)
    matrix = linalg.RationalMatrix.from_int_rows(rows, ncols)
    return ConstraintSystem(cell, d, r, matrix, meta, faces)


# ---------------------------------------------------------------------------
# dimension, basis, degeneracy

_REPORT_CACHE: dict[tuple[Cell, int, int], SpaceReport] = {}


def clear_caches() -> None:
    _REPORT_CACHE.clear()
    _block_nullspace.cache_clear()
    _face_degree_data.cache_clear()
    _face_frames.cache_clear()


def _reduced_nullspace(cell: Cell, d: int, r: int) -> list[list[Fraction]]:
    """Canonical nullspace of the (d, r) quotient system, assembled from the
    degree blocks and ordered by global free column (piece-major, grlex)."""
    n = cell.dimension
    c_full = dim_pi(n, d)
    ncols = (len(cell.elements) - 1) * c_full
    zero = Fraction(0)
    tagged: list[tuple[int, list[Fraction]]] = []
    for k in range(d + 1):
        vectors, free = _block_nullspace(cell, r, k)
        if not vectors:
            continue
        c_k = len(monomials_of_degree(n, k))
        offset = dim_pi(n, k - 1)
        for vec, f in zip(vectors, free):
            out = [zero] * ncols
            for block_col, val in enumerate(vec):
                if val:
                    piece, a_loc = divmod(block_col, c_k)
                    out[piece * c_full + offset + a_loc] = val
            piece, a_loc = divmod(f, c_k)
            tagged.append((piece * c_full + offset + a_loc, out))
    tagged.sort(key=lambda t: t[0])
    return [vec for _, vec in tagged]


def dim_spline_space(cell: Cell, d: int, r: int) -> SpaceReport:
    """Certified dimension of S_d^r over the cell, with the degeneracy flag."""
    _check_space_args(cell, d, r)
    key = (cell, d, r)
    cached = _REPORT_CACHE.get(key)
    if cached is not None:
        return cached
    nullity = sum(len(_block_nullspace(cell, r, k)[0]) for k in range(d + 1))
    dimension = dim_pi(cell.dimension, d) + nullity
    report = SpaceReport(cell.dimension, d, r, dimension, nullity == 0)
    _REPORT_CACHE[key] = report
    return report


def seed_report(report: SpaceReport, cell: Cell) -> None:
    """Install an externally computed report (used by the CLI worker pool)."""
    _REPORT_CACHE[(cell, report.d, report.r)] = report


def _decode_reduced(cell: Cell, d: int, vector: list[Fraction]) -> PiecewisePolynomial:
    n = cell.dimension
    v = cell.center_point
    c_full = dim_pi(n, d)
    pieces = [Polynomial.zero(n, v)]
    for p in range(1, len(cell.elements)):
        chunk = vector[(p - 1) * c_full : p * c_full]
        pieces.append(Polynomial.from_coefficient_vector(n, d, chunk, v))
    return PiecewisePolynomial(cell, tuple(pieces))


def global_polynomial_splines(cell: Cell, d: int) -> list[PiecewisePolynomial]:
    """Monomial splines: each monomial of degree <= d replicated on all pieces."""
    n = cell.dimension
    v = cell.center_point
    npieces = len(cell.elements)
    out = []
    for alpha in monomials(n, d):
        p = Polynomial.monomial(n, alpha, 1, v)
        out.append(PiecewisePolynomial(cell, (p,) * npieces))
    return out


def basis_spline_space(cell: Cell, d: int, r: int) -> list[PiecewisePolynomial]:
    """Deterministic basis of S_d^r: global monomial splines first, then one
    generator per true-spline direction (piece 0 identically zero)."""
    report = dim_spline_space(cell, d, r)
    vectors = _reduced_nullspace(cell, d, r)
    basis = global_polynomial_splines(cell, d)
    basis.extend(_decode_reduced(cell, d, vec) for vec in vectors)
    assert len(basis) == report.dimension
    return basis


def vertex_smoothness_order(s: PiecewisePolynomial, rho_max: int) -> int | None:
    """Largest rho <= rho_max with all pairs of pieces matching derivatives at
    v for |alpha| <= rho; None when the pieces already disagree at order 0."""
    if rho_max < 0:
        raise InputError("rho_max must be nonnegative")
    n = s.cell.dimension
    base = s.pieces[0]
    for rho in range(rho_max + 1):
        for alpha in monomials_of_degree(n, rho):
            c0 = base.coefficient(alpha)
            for piece in s.pieces[1:]:
                if piece.coefficient(alpha) != c0:
                    return rho - 1 if rho > 0 else None
    return rho_max


def first_mismatch(s: PiecewisePolynomial, order_cap: int):
    """(order, multi-index) of the graded-lex first vertex-derivative mismatch."""
    n = s.cell.dimension
    base = s.pieces[0]
    for rho in range(order_cap + 1):
        for alpha in monomials_of_degree(n, rho):
            c0 = base.coefficient(alpha)
            if any(p.coefficient(alpha) != c0 for p in s.pieces[1:]):
                return rho, alpha
    return None


def default_cap(n: int, r: int) -> int:
    """Scan cap exceeding every closed-form maximal supersmoothness order."""
    return r + n * (r + 2)


def mos_oracle(cell: Cell, r: int, cap: int | None = None) -> MosReport:
    """Scan d = r, r+1, ... for the first non-degenerate S_d^r.

    The spaces are nested, so the first non-degenerate degree d* yields
    mos = d* - 1 together with a witness spline whose pieces differ.  If every
    degree through the cap is degenerate, mos is reported as a lower bound.
    """
    if r < 0:
        raise InputError("r must be nonnegative")
    if cap is None:
        cap = default_cap(cell.dimension, r)
    if cap < r:
        raise InputError("cap must be at least r")
    trace = []
    for d in range(r, cap + 1):
        report = dim_spline_space(cell, d, r)
        trace.append((d, report.dimension, report.degenerate))
        if not report.degenerate:
            witness = _decode_reduced(cell, d, _reduced_nullspace(cell, d, r)[0])
            return MosReport(r, d - 1, True, tuple(trace), witness)
    return MosReport(r, cap, False, tuple(trace), None)


def find_witness(cell: Cell, r: int, cap: int | None = None) -> PiecewisePolynomial:
    """A spline in S_{mos+1}^r with unequal pieces; its first vertex-derivative
    mismatch is exactly at order mos+1."""
    report = mos_oracle(cell, r, cap)
    if not report.exact:
        raise CapReachedError(
            f"degeneracy scan hit the cap at d = {report.mos}; mos is only bounded below"
        )
    assert report.witness is not None
    return report.witness
