"""Exact rational geometry: points, simplices, cells and cell generators.

All coordinates are `fractions.Fraction`; every predicate (orientation,
interiority, collinearity, mesh validity) is an exact sign test, so cells can
be placed in special position (collinear slopes, non-aligned facet points)
without any numerical ambiguity.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .errors import InputError, InvalidGeometryError

Scalar = Fraction
Point = tuple[Fraction, ...]

_SCALAR_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_scalar(text: str) -> Fraction:
    """Parse a canonical rational string "p/q" or "p"."""
    if not isinstance(text, str) or not _SCALAR_RE.match(text):
        raise InputError(f"not a canonical rational: {text!r}")
    return Fraction(text)


def format_scalar(x: Fraction) -> str:
    """Canonical string form: "p/q" with q > 1, else "p"."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_point(coords) -> Point:
    return tuple(Fraction(c) for c in coords)


# ---------------------------------------------------------------------------
# small exact linear algebra (local helpers; the heavy engine lives in linalg)


def _rref_solve(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve A x = b exactly.  Returns the solution if it is unique,
    None if the system is inconsistent, and raises on underdetermined input."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    piv_cols = []
    pr = 0
    for c in range(n):
        pivot = next((i for i in range(pr, m) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[pr], aug[pivot] = aug[pivot], aug[pr]
        pv = aug[pr][c]
        aug[pr] = [e / pv for e in aug[pr]]
        for i in range(m):
            if i != pr and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[pr])]
        piv_cols.append(c)
        pr += 1
    for i in range(pr, m):
        if aug[i][n] != 0:
            return None
    if len(piv_cols) < n:
        raise InputError("underdetermined exact solve")
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][n]
    return sol


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish elimination (tiny matrices)."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        inv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def orientation(points: list[Point]) -> Fraction:
    """Signed volume determinant of an (n+1)-tuple of points in R^n."""
    base = points[0]
    rows = [[q[i] - base[i] for i in range(len(base))] for q in points[1:]]
    return _det(rows)


def affine_coordinates(vertices: list[Point], x: Point):
    """Barycentric coordinates of x w.r.t. affinely independent vertices.

    Returns None when x is outside the affine hull (only possible when the
    vertices span a proper subspace)."""
    n = len(x)
    k = len(vertices)
    rows = [[vertices[j][i] for j in range(k)] for i in range(n)]
    rows.append([Fraction(1)] * k)
    rhs = [x[i] for i in range(n)] + [Fraction(1)]
    return _rref_solve(rows, rhs)


def _inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise InvalidGeometryError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [e / pv for e in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def primitive_direction(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    fracs = [Fraction(v) for v in vec]
    if all(v == 0 for v in fracs):
        raise InputError("zero vector has no direction")
    scale = lcm(*(v.denominator for v in fracs))
    ints = [int(v * scale) for v in fracs]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def integer_normal(directions: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Primitive integer normal to the span of n-1 integer vectors in R^n."""
    n = len(directions[0])
    comps = []
    for j in range(n):
        minor = [[Fraction(d[i]) for i in range(n) if i != j] for d in directions]
        comps.append((-1) ** j * _det(minor))
    if all(c == 0 for c in comps):
        raise InvalidGeometryError("directions do not span a hyperplane")
    return primitive_direction(comps)


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class LinearForm:
    """Affine form a.x + c, normalized so the first nonzero coefficient is 1."""

    coefficients: tuple[Fraction, ...]
    constant: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.coefficients):
            raise InvalidGeometryError("linear form with zero gradient")

    @classmethod
    def through_points(cls, points: list[Point]) -> "LinearForm":
        """The canonical form vanishing on n points that span a hyperplane."""
        base = points[0]
        n = len(base)
        dirs = [primitive_direction([q[i] - base[i] for i in range(n)]) for q in points[1:]]
        normal = integer_normal(dirs)
        coeffs = [Fraction(a) for a in normal]
        const = -sum(c * b for c, b in zip(coeffs, base))
        lead = next(c for c in coeffs if c != 0)
        return cls(tuple(c / lead for c in coeffs), const / lead)

    def __call__(self, x: Point) -> Fraction:
        return sum(c * xi for c, xi in zip(self.coefficients, x)) + self.constant


@dataclass(frozen=True)
class Face:
    """An (n-1)-face given by n point indices plus its canonical hyperplane form."""

    vertex_ids: tuple[int, ...]
    linear_form: LinearForm


def make_face(points: tuple[Point, ...], ids) -> Face:
    ids = tuple(sorted(ids))
    return Face(ids, LinearForm.through_points([points[i] for i in ids]))


@dataclass(frozen=True)
class Element:
    """A cell element: an n-simplex, or the 2-cell complement piece."""

    kind: str  # "simplex" | "complement"
    vertex_ids: tuple[int, ...]
    constraint_faces: tuple[Face, ...] = ()


@dataclass(frozen=True)
class Cell:
    """A set of elements sharing the center vertex v (= points[center])."""

    dimension: int
    points: tuple[Point, ...]
    elements: tuple[Element, ...]
    center: int

    @property
    def center_point(self) -> Point:
        return self.points[self.center]


@dataclass(frozen=True)
class CellDiagnostics:
    ok: bool
    message: str | None = None


# ---------------------------------------------------------------------------
# exact feasibility test (Fourier-Motzkin) for the mesh condition


def _barycentric_forms(points: tuple[Point, ...], ids) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Affine forms lambda_i with lambda_i(p_j) = delta_ij for a full simplex."""
    pts = [points[i] for i in ids]
    n = len(pts[0])
    mat = [[pts[j][i] for j in range(n + 1)] for i in range(n)]
    mat.append([Fraction(1)] * (n + 1))
    inv = _inverse(mat)
    return [(tuple(row[:n]), row[n]) for row in inv]


def _canonical_ineq(coeffs, const, strict):
    vals = list(coeffs) + [const]
    nz = [v for v in vals if v != 0]
    if not nz:
        return (tuple(vals), strict)
    scale = lcm(*(v.denominator for v in vals if v != 0))
    ints = [int(v * scale) for v in vals]
    g = gcd(*(abs(v) for v in ints if v != 0))
    ints = [v // g for v in ints]
    return (tuple(Fraction(v) for v in ints), strict)


def _fm_feasible(ineqs: list[tuple[tuple[Fraction, ...], Fraction, bool]]) -> bool:
    """Exact feasibility of {a.x + c >= 0 (or > 0 when strict)} by projection."""
    n = len(ineqs[0][0]) if ineqs else 0
    current = ineqs
    for var in range(n):
        pos, neg, rest = [], [], []
        for coeffs, const, strict in current:
            cv = coeffs[var]
            if cv > 0:
                pos.append((coeffs, const, strict))
            elif cv < 0:
                neg.append((coeffs, const, strict))
            else:
                rest.append((coeffs, const, strict))
        combined = {}
        for pc, pk, ps in pos:
            for nc, nk, ns in neg:
                a, b = pc[var], -nc[var]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                const = b * pk + a * nk
                key_c, strict = _canonical_ineq(coeffs, const, ps or ns)
                prev = combined.get(key_c)
                combined[key_c] = (prev or strict) if prev is not None else strict
        for coeffs, const, strict in rest:
            key_c, s = _canonical_ineq(coeffs, const, strict)
            prev = combined.get(key_c)
            combined[key_c] = (prev or s) if prev is not None else s
        current = []
        for key_c, strict in combined.items():
            coeffs, const = key_c[:-1], key_c[-1]
            if all(c == 0 for c in coeffs):
                if const < 0 or (strict and const == 0):
                    return False
                continue
            current.append((coeffs, const, strict))
    for coeffs, const, strict in current:
        if const < 0 or (strict and const == 0):
            return False
    return True


def _pair_is_common_face(cell: Cell, ei: int, ej: int) -> bool:
    """Exact check that two simplices intersect in the face spanned by their
    shared vertex indices (possibly empty)."""
    t1, t2 = cell.elements[ei], cell.elements[ej]
    shared = set(t1.vertex_ids) & set(t2.vertex_ids)
    forms1 = _barycentric_forms(cell.points, t1.vertex_ids)
    forms2 = _barycentric_forms(cell.points, t2.vertex_ids)
    base = [(c, k, False) for c, k in forms1] + [(c, k, False) for c, k in forms2]
    for local, vid in enumerate(t1.vertex_ids):
        if vid in shared:
            continue
        coeffs, const = forms1[local]
        if _fm_feasible(base + [(coeffs, const, True)]):
            return False
    return True


# ---------------------------------------------------------------------------
# validation


def _validate_two_cell(cell: Cell) -> CellDiagnostics:
    simplex = cell.elements[0]
    comp = cell.elements[1]
    n = cell.dimension
    if simplex.kind != "simplex":
        return CellDiagnostics(False, "2-cell element 0 must be the simplex piece")
    if len(comp.constraint_faces) != n:
        return CellDiagnostics(False, "complement must carry exactly n constraint faces")
    outer_ids = sorted(set(comp.vertex_ids) - {cell.center})
    if len(outer_ids) != n + 1:
        return CellDiagnostics(False, "complement must list the n+1 outer vertices and v")
    outer = [cell.points[i] for i in outer_ids]
    if orientation(outer) == 0:
        return CellDiagnostics(False, "outer simplex is degenerate")
    bary = affine_coordinates(outer, cell.center_point)
    if bary is None or any(b <= 0 for b in bary):
        return CellDiagnostics(False, "center is not strictly inside the outer simplex")
    facet = set(simplex.vertex_ids) - {cell.center}
    if not facet <= set(outer_ids) or len(facet) != n:
        return CellDiagnostics(False, "simplex piece is not a cone of v over an outer facet")
    expected = set()
    for u in facet:
        expected.add(tuple(sorted((facet - {u}) | {cell.center})))
    got = {f.vertex_ids for f in comp.constraint_faces}
    if got != expected:
        return CellDiagnostics(False, "constraint faces do not match the cone faces of the simplex piece")
    for f in comp.constraint_faces:
        for i in f.vertex_ids:
            if f.linear_form(cell.points[i]) != 0:
                return CellDiagnostics(False, "constraint face form does not vanish on the face")
    return CellDiagnostics(True)


def validate_cell(cell: Cell) -> CellDiagnostics:
    """Check every Cell invariant; report the first violation found."""
    n = cell.dimension
    if n < 1:
        return CellDiagnostics(False, "dimension must be positive")
    for p in cell.points:
        if len(p) != n:
            return CellDiagnostics(False, "point arity does not match cell dimension")
    if len(set(cell.points)) != len(cell.points):
        return CellDiagnostics(False, "duplicate point coordinates")
    if not (0 <= cell.center < len(cell.points)):
        return CellDiagnostics(False, "center index out of range")
    if not cell.elements:
        return CellDiagnostics(False, "cell has no elements")

    kinds = {e.kind for e in cell.elements}
    if "complement" in kinds:
        if len(cell.elements) != 2 or [e.kind for e in cell.elements] != ["simplex", "complement"]:
            return CellDiagnostics(False, "complement elements occur only in 2-cells")
    for e in cell.elements:
        if any(not 0 <= i < len(cell.points) for i in e.vertex_ids):
            return CellDiagnostics(False, "element vertex id out of range")
        if cell.center not in e.vertex_ids:
            return CellDiagnostics(False, "center vertex must belong to every element")
        if e.kind == "simplex":
            if len(set(e.vertex_ids)) != n + 1:
                return CellDiagnostics(False, "simplex must have n+1 distinct vertices")
            if orientation([cell.points[i] for i in e.vertex_ids]) == 0:
                return CellDiagnostics(False, "degenerate simplex (affinely dependent vertices)")
            if e.constraint_faces:
                return CellDiagnostics(False, "simplex elements carry no constraint faces")

    if "complement" in kinds:
        return _validate_two_cell(cell)

    for i, j in combinations(range(len(cell.elements)), 2):
        if not _pair_is_common_face(cell, i, j):
            return CellDiagnostics(False, f"intersection of elements {i} and {j} is not a common face")

    # v interior: every element facet containing v is shared by exactly two elements
    facet_count: dict[tuple[int, ...], int] = {}
    for e in cell.elements:
        others = [i for i in e.vertex_ids if i != cell.center]
        for omit in others:
            key = tuple(sorted(set(e.vertex_ids) - {omit}))
            facet_count[key] = facet_count.get(key, 0) + 1
    for key, count in facet_count.items():
        if count != 2:
            return CellDiagnostics(False, "center vertex lies on the boundary of the cell union")
    return CellDiagnostics(True)


# ---------------------------------------------------------------------------
# derived structure


def interior_faces(cell: Cell) -> list[tuple[int, int, Face]]:
    """All faces shared by two elements, each unordered pair listed once."""
    if cell.elements and cell.elements[-1].kind == "complement":
        return [(0, 1, f) for f in cell.elements[1].constraint_faces]
    n = cell.dimension
    out = []
    for i, j in combinations(range(len(cell.elements)), 2):
        shared = sorted(set(cell.elements[i].vertex_ids) & set(cell.elements[j].vertex_ids))
        if len(shared) == n:
            out.append((i, j, make_face(cell.points, shared)))
    return out


def count_distinct_slopes_2d(cell: Cell) -> int:
    """Number of distinct undirected directions among interior edges at v."""
    if cell.dimension != 2:
        raise InputError("slope counting is defined for 2D cells")
    v = cell.center_point
    dirs = set()
    for _, _, face in interior_faces(cell):
        other = next(i for i in face.vertex_ids if i != cell.center)
        q = cell.points[other]
        dirs.add(primitive_direction([q[0] - v[0], q[1] - v[1]]))
    return len(dirs)


def apply_affine(cell: Cell, matrix, shift) -> Cell:
    """Image of a cell under x -> A x + b with A an exact invertible matrix."""
    n = cell.dimension
    a_rows = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    if _det(a_rows) == 0:
        raise InputError("affine map must be invertible")
    b = as_point(shift)
    new_points = tuple(
        tuple(sum(a_rows[i][j] * p[j] for j in range(n)) + b[i] for i in range(n))
        for p in cell.points
    )
    new_elements = []
    for e in cell.elements:
        faces = tuple(make_face(new_points, f.vertex_ids) for f in e.constraint_faces)
        new_elements.append(Element(e.kind, e.vertex_ids, faces))
    return Cell(n, new_points, tuple(new_elements), cell.center)


# ---------------------------------------------------------------------------
# generators


def _check_outer_simplex(n: int, outer) -> list[Point]:
    pts = [as_point(p) for p in outer]
    if len(pts) != n + 1 or any(len(p) != n for p in pts):
        raise InputError(f"outer simplex needs {n + 1} points in R^{n}")
    if orientation(pts) == 0:
        raise InvalidGeometryError("outer simplex is degenerate")
    return pts


def _require_interior(pts: list[Point], v: Point) -> None:
    bary = affine_coordinates(pts, v)
    if bary is None or any(b <= 0 for b in bary):
        raise InvalidGeometryError("point is not strictly inside the simplex")


def make_alfeld(n: int, outer_simplex, v) -> Cell:
    """Split an n-simplex into n+1 by coning an interior point over its facets."""
    pts = _check_outer_simplex(n, outer_simplex)
    vp = as_point(v)
    if len(vp) != n:
        raise InputError("interior point arity mismatch")
    _require_interior(pts, vp)
    points = tuple(pts) + (vp,)
    center = n + 1
    cones = sorted(
        tuple(sorted(set(range(n + 1)) - {omit})) + (center,) for omit in range(n + 1)
    )
    elements = tuple(Element("simplex", ids) for ids in cones)
    return Cell(n, points, elements, center)


def make_clough_tocher(outer_triangle, v) -> Cell:
    """Clough-Tocher split: a triangle refined at an interior point."""
    return make_alfeld(2, outer_triangle, v)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _half_rank(d):
    # 0 for angles in [0, pi), 1 for [pi, 2pi); exact branch-cut bookkeeping
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angular_less(a, b) -> bool:
    """Exact strict angular order on nonzero plane vectors, angles in [0, 2pi)."""
    ra, rb = _half_rank(a), _half_rank(b)
    if ra != rb:
        return ra < rb
    return _cross(a, b) > 0


def make_star_cell_2d(v, boundary) -> Cell:
    """Star of m triangles {v, p_i, p_i+1} around v, boundary in angular order."""
    vp = as_point(v)
    pts = [as_point(p) for p in boundary]
    m = len(pts)
    if len(vp) != 2 or any(len(p) != 2 for p in pts):
        raise InputError("2D star cell needs planar points")
    if m < 3:
        raise InvalidGeometryError("a 2D interior cell needs at least 3 triangles")
    dirs = []
    for p in pts:
        if p == vp:
            raise InvalidGeometryError("boundary point equals the center")
        dirs.append((p[0] - vp[0], p[1] - vp[1]))
    for i in range(m):
        if _cross(dirs[i], dirs[(i + 1) % m]) <= 0:
            raise InvalidGeometryError("boundary points not in strict angular order around v")
    # all angular gaps lie in (0, pi); one winding iff the absolute angular
    # order wraps exactly once around the branch cut
    descents = sum(_angular_less(dirs[(i + 1) % m], dirs[i]) for i in range(m))
    if descents != 1:
        raise InvalidGeometryError("boundary winds around v more than once")
    points = tuple(pts) + (vp,)
    center = m
    elements = tuple(
        Element("simplex", tuple(sorted((i, (i + 1) % m, center))))
        for i in range(m)
    )
    return Cell(2, points, elements, center)


def make_split_k_n(k: int, n: int, outer_simplex, interior_point_choices=None) -> Cell:
    """Recursive split initialized at the k-faces: each j-face (k <= j <= n) is
    split at an interior point coned over the split of its boundary."""
    if not 1 <= k <= n:
        raise InputError("need 1 <= k <= n")
    pts = _check_outer_simplex(n, outer_simplex)
    choices = {}
    for key, val in (interior_point_choices or {}).items():
        choices[tuple(sorted(key))] = as_point(val)

    points: list[Point] = list(pts)
    split_point_id: dict[tuple[int, ...], int] = {}
    for j in range(k, n + 1):
        for ids in combinations(range(n + 1), j + 1):
            face_pts = [pts[i] for i in ids]
            chosen = choices.get(ids)
            if chosen is None:
                chosen = tuple(sum(p[i] for p in face_pts) / (j + 1) for i in range(n))
            bary = affine_coordinates(face_pts, chosen)
            if bary is None or any(b <= 0 for b in bary):
                raise InvalidGeometryError(
                    f"split point for face {ids} is not in its relative interior"
                )
            split_point_id[ids] = len(points)
            points.append(chosen)

    def pieces(ids: tuple[int, ...]) -> list[tuple[int, ...]]:
        if len(ids) - 1 == k - 1:
            return [ids]
        w = split_point_id[ids]
        out = []
        for sub in combinations(ids, len(ids) - 1):
            for simplex in pieces(sub):
                out.append(simplex + (w,))
        return out

    full = tuple(range(n + 1))
    elements = tuple(
        Element("simplex", tuple(sorted(s))) for s in sorted(pieces(full))
    )
    return Cell(n, tuple(points), elements, split_point_id[full])


def aligned_facet_points(n: int, outer_simplex, v) -> list[Point]:
    """For each facet (opposite vertex i), the point where the line through
    the opposite vertex and v meets the facet hyperplane."""
    pts = _check_outer_simplex(n, outer_simplex)
    vp = as_point(v)
    _require_interior(pts, vp)
    out = []
    for i in range(n + 1):
        facet = [pts[j] for j in range(n + 1) if j != i]
        form = LinearForm.through_points(facet)
        a = pts[i]
        denom = form(a) - form(vp)
        assert denom != 0, "interior point cannot be parallel to a facet"
        t = form(a) / denom
        w = tuple(a[c] + t * (vp[c] - a[c]) for c in range(n))
        bary = affine_coordinates(facet, w)
        assert bary is not None and all(b > 0 for b in bary), (
            "aligned facet point must land in the facet interior"
        )
        out.append(w)
    return out


def make_facet_split(n: int, outer_simplex, v, face_points=None, aligned: bool = True) -> Cell:
    """Alfeld split followed by splitting each boundary facet into n pieces.

    With aligned=True the facet points are computed (collinear with v and the
    opposite vertex) and must not be supplied; otherwise one point per facet,
    indexed by the opposite vertex, is required."""
    pts = _check_outer_simplex(n, outer_simplex)
    vp = as_point(v)
    _require_interior(pts, vp)
    if aligned:
        if face_points is not None:
            raise InputError("aligned facet points are computed, not supplied")
        face_points = aligned_facet_points(n, outer_simplex, v)
    else:
        if face_points is None or len(face_points) != n + 1:
            raise InputError("non-aligned split needs one point per facet")
        face_points = [as_point(p) for p in face_points]
    choices = {tuple(range(n + 1)): vp}
    for i in range(n + 1):
        ids = tuple(j for j in range(n + 1) if j != i)
        choices[ids] = face_points[i]
    return make_split_k_n(n - 1, n, outer_simplex, choices)


def make_two_cell(n: int, outer_simplex, v, chosen_face: int) -> Cell:
    """Cone v over one facet (T_1); the complement piece carries the n faces
    shared between T_1 and the closure of T minus T_1."""
    pts = _check_outer_simplex(n, outer_simplex)
    vp = as_point(v)
    if not 0 <= chosen_face <= n:
        raise InputError("chosen face index out of range")
    _require_interior(pts, vp)
    points = tuple(pts) + (vp,)
    center = n + 1
    facet_ids = tuple(sorted(j for j in range(n + 1) if j != chosen_face))
    simplex = Element("simplex", facet_ids + (center,))
    faces = tuple(
        make_face(points, tuple(sorted((set(facet_ids) - {u}) | {center})))
        for u in facet_ids
    )
    complement = Element("complement", tuple(range(n + 2)), faces)
    return Cell(n, points, (simplex, complement), center)


# ---------------------------------------------------------------------------
# JSON serialization (canonical rational strings)


def cell_to_dict(cell: Cell) -> dict:
    elements = []
    for e in cell.elements:
        entry: dict = {"kind": e.kind, "vertices": list(e.vertex_ids)}
        if e.kind == "complement":
            entry["constraint_faces"] = [list(f.vertex_ids) for f in e.constraint_faces]
        elements.append(entry)
    return {
        "dimension": cell.dimension,
        "points": [[format_scalar(c) for c in p] for p in cell.points],
        "elements": elements,
        "center": cell.center,
    }


def cell_from_dict(data: dict) -> Cell:
    try:
        n = int(data["dimension"])
        points = tuple(tuple(parse_scalar(c) for c in p) for p in data["points"])
        center = int(data["center"])
        elements = []
        for e in data["elements"]:
            ids = tuple(int(i) for i in e["vertices"])
            if e["kind"] == "simplex":
                elements.append(Element("simplex", ids))
            elif e["kind"] == "complement":
                faces = tuple(
                    make_face(points, tuple(int(i) for i in f))
                    for f in e["constraint_faces"]
                )
                elements.append(Element("complement", ids, faces))
            else:
                raise InputError(f"unknown element kind {e['kind']!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed cell data: {exc}") from exc
    return Cell(n, points, tuple(elements), center)


def cell_to_json(cell: Cell) -> str:
    return json.dumps(cell_to_dict(cell))


def cell_from_json(text: str) -> Cell:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return cell_from_dict(data)
