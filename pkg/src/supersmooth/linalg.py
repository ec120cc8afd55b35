"""Certified exact rank and nullspace over the rationals.

Strategy: row-reduce modulo deterministic 31-bit primes to find the pivot
structure fast, lift the candidate nullspace to exact rationals by CRT plus
rational reconstruction, then certify unconditionally: the candidate vectors
are independent by construction (identity pattern on the free columns), and
M.x = 0 is proved exactly by checking it modulo enough primes to exceed an
a-priori bound on the integer entries of M.x.  Since rank mod p never exceeds
the rational rank, a verified basis of size (cols - rank_p) pins the rank.

A fraction-free Bareiss elimination is kept as an independent exact
cross-check path (`bareiss_nullspace`).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from . import _kernels
from .errors import VerificationError

# ---------------------------------------------------------------------------
# deterministic prime stream (descending below 2**31, shared by all backends)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIME_CACHE: list[int] = []


def _prime(index: int) -> int:
    candidate = _PRIME_CACHE[-1] - 2 if _PRIME_CACHE else (1 << 31) - 1
    while len(_PRIME_CACHE) <= index:
        if _is_prime(candidate):
            _PRIME_CACHE.append(candidate)
        candidate -= 2
    return _PRIME_CACHE[index]


# ---------------------------------------------------------------------------
# matrix type

_SPARSE_FILL_THRESHOLD = Fraction(1, 4)

IntRow = tuple[tuple[int, ...], tuple[int, ...]]  # (column indices, values)


class RationalMatrix:
    """Exact rational matrix; rows are stored denominator-cleared.

    Row scaling never changes rank or nullspace, so the engine works on the
    integer rows; `entry` reports the original rational values.  Storage is
    sparse (per-row index/value pairs) or dense by the fill-ratio threshold.
    """

    def __init__(self, nrows: int, ncols: int, int_rows: list[IntRow], scales: list[int]):
        self.rows = nrows
        self.cols = ncols
        self._scales = scales
        nnz = sum(len(cols) for cols, _ in int_rows)
        dense_cells = nrows * ncols
        self._sparse = dense_cells == 0 or Fraction(nnz, dense_cells) <= _SPARSE_FILL_THRESHOLD
        if self._sparse:
            self._data: list = int_rows
        else:
            dense = []
            for cols, vals in int_rows:
                row = [0] * ncols
                for c, v in zip(cols, vals):
                    row[c] = v
                dense.append(row)
            self._data = dense

    @property
    def storage(self) -> str:
        return "sparse" if self._sparse else "dense"

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        """Build from dense rational rows (Fractions, ints or rational strings)."""
        frac_rows = [[Fraction(x) for x in row] for row in rows]
        ncols = len(frac_rows[0]) if frac_rows else 0
        if any(len(r) != ncols for r in frac_rows):
            raise ValueError("ragged rows")
        int_rows: list[IntRow] = []
        scales = []
        for row in frac_rows:
            scale = lcm(*(x.denominator for x in row)) if row else 1
            cols, vals = [], []
            for j, x in enumerate(row):
                if x:
                    cols.append(j)
                    vals.append(int(x * scale))
            int_rows.append((tuple(cols), tuple(vals)))
            scales.append(scale)
        return cls(len(frac_rows), ncols, int_rows, scales)

    @classmethod
    def from_int_rows(cls, int_rows: list[IntRow], ncols: int) -> "RationalMatrix":
        rows = [(tuple(cols), tuple(vals)) for cols, vals in int_rows]
        return cls(len(rows), ncols, rows, [1] * len(rows))

    def int_rows(self) -> list[IntRow]:
        if self._sparse:
            return self._data
        out = []
        for row in self._data:
            cols = tuple(j for j, v in enumerate(row) if v)
            out.append((cols, tuple(row[j] for j in cols)))
        return out

    def entry(self, i: int, j: int) -> Fraction:
        if self._sparse:
            cols, vals = self._data[i]
            try:
                k = cols.index(j)
            except ValueError:
                return Fraction(0)
            return Fraction(vals[k], self._scales[i])
        return Fraction(self._data[i][j], self._scales[i])

    def to_fraction_rows(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, {self.storage})"


# ---------------------------------------------------------------------------
# modular engine

_MAX_STRUCTURE_PRIMES = 30


def _reduce_to_array(rows: list[IntRow], ncols: int, p: int) -> np.ndarray:
    arr = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, (cols, vals) in enumerate(rows):
        if cols:
            arr[i, list(cols)] = [v % p for v in vals]
    return arr


def rank_mod_p(rows: list[IntRow], ncols: int, p: int) -> int:
    """Rank of the integer row set modulo p (never exceeds the rational rank)."""
    arr = _reduce_to_array(rows, ncols, p)
    rank, _ = _kernels.ref_forward(arr, p)
    return rank


def _rat_reconstruct(u: int, m: int, bound: int, memo: dict):
    hit = memo.get(u)
    if hit is not None:
        return hit
    if u <= bound:
        res = (u, 1)
    elif m - u <= bound:
        res = (u - m, 1)
    else:
        old_r, r = m, u
        old_s, s = 0, 1
        while r > bound:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
        num, den = r, s
        if den < 0:
            num, den = -num, -den
        if den == 0 or den > bound or gcd(num, den) != 1:
            res = None
        else:
            res = (num, den)
    memo[u] = res
    return res


class _CrtState:
    """Incrementally CRT-combined residue matrix (arbitrary-precision entries)."""

    __slots__ = ("modulus", "entries", "primes", "_fail_hint")

    def __init__(self, p: int, residue: np.ndarray):
        self.modulus = p
        self.entries = [list(map(int, row)) for row in residue]
        self.primes = [p]
        self._fail_hint: tuple[int, int] | None = None

    def fold(self, p: int, residue: np.ndarray) -> None:
        inv = pow(self.modulus % p, -1, p)
        m = self.modulus
        rl = residue.tolist()
        for i, row in enumerate(self.entries):
            ri = rl[i]
            for j, x in enumerate(row):
                t = ((ri[j] - x) * inv) % p
                if t:
                    row[j] = x + m * t
        self.modulus *= p
        self.primes.append(p)

    def reconstruct(self) -> list[list[Fraction]] | None:
        m = self.modulus
        bound = isqrt((m - 1) // 2)
        if bound == 0:
            return None
        memo: dict = {}
        if self._fail_hint is not None:
            # the entry that sank the previous attempt is the cheapest probe
            i, j = self._fail_hint
            if _rat_reconstruct(self.entries[i][j], m, bound, memo) is None:
                return None
        out = []
        for i, row in enumerate(self.entries):
            frow = []
            for j, u in enumerate(row):
                res = _rat_reconstruct(u, m, bound, memo)
                if res is None:
                    self._fail_hint = (i, j)
                    return None
                frow.append(Fraction(*res))
            out.append(frow)
        return out


def _assemble_vectors(
    reduced: list[list[Fraction]], pivots: tuple[int, ...], ncols: int
) -> list[list[Fraction]]:
    free = _kernels.free_columns(ncols, list(pivots))
    vectors = []
    zero = Fraction(0)
    for fi, f in enumerate(free):
        vec = [zero] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            val = reduced[i][fi]
            if val:
                vec[p] = -val
        vectors.append(vec)
    return vectors


def _verify_nullspace(
    rows: list[IntRow], ncols: int, vectors: list[list[Fraction]], structure_primes: list[int]
) -> bool:
    """Unconditional proof that every vector lies in the nullspace.

    The integer entries of M.x are bounded by max row L1-norm times the
    largest cleared entry of x; congruence to zero modulo a larger product of
    primes forces exact zero.  Congruences modulo the structure primes hold
    by construction of the candidates, so only the shortfall is checked.
    """
    if not vectors:
        return True
    int_cols = []
    max_abs = 1
    for vec in vectors:
        scale = lcm(*(x.denominator for x in vec))
        ints = [int(x * scale) for x in vec]
        int_cols.append(ints)
        max_abs = max(max_abs, max(abs(v) for v in ints))
    row_l1 = 0
    for _, vals in rows:
        s = sum(abs(v) for v in vals)
        if s > row_l1:
            row_l1 = s
    need = 2 * row_l1 * max_abs + 1
    have = 1
    for p in structure_primes:
        have *= p
    used = set(structure_primes)
    index = 0
    while have < need:
        q = _prime(index)
        index += 1
        if q in used:
            continue
        arr = _reduce_to_array(rows, ncols, q)
        x = np.array([[v % q for v in col] for col in int_cols], dtype=np.int64).T
        if _kernels.modp_matmul(arr, x, q).any():
            return False
        have *= q
    return True


def _identity_basis(ncols: int) -> list[list[Fraction]]:
    zero, one = Fraction(0), Fraction(1)
    return [[one if i == f else zero for i in range(ncols)] for f in range(ncols)]


def _nullspace_modular(rows: list[IntRow], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Canonical nullspace basis plus the free-column indices."""
    if ncols == 0:
        return [], []
    if not any(cols for cols, _ in rows):
        return _identity_basis(ncols), list(range(ncols))
    best: tuple[int, tuple[int, ...]] | None = None
    state: _CrtState | None = None
    for index in range(_MAX_STRUCTURE_PRIMES):
        p = _prime(index)
        arr = _reduce_to_array(rows, ncols, p)
        rank, pivots = _kernels.ref_forward(arr, p)
        if rank == ncols:
            # full column rank mod p certifies full rational column rank
            return [], []
        key = (rank, tuple(pivots))
        if best is None or key[0] > best[0] or (key[0] == best[0] and key[1] < best[1]):
            best = key
            state = None
        if key != best:
            continue
        residue = _kernels.nullspace_residues(arr, rank, pivots, p)
        if state is None:
            state = _CrtState(p, residue)
        else:
            state.fold(p, residue)
        reduced = state.reconstruct()
        if reduced is None:
            continue
        vectors = _assemble_vectors(reduced, best[1], ncols)
        if _verify_nullspace(rows, ncols, vectors, state.primes):
            return vectors, _kernels.free_columns(ncols, list(best[1]))
    raise VerificationError("nullspace certification exhausted its prime budget")


# ---------------------------------------------------------------------------
# fraction-free cross-check path

_ABS = abs


def bareiss_nullspace(matrix: RationalMatrix) -> list[list[Fraction]]:
    """Exact nullspace basis by fraction-free (Bareiss) elimination.

    Pivoting: structurally sparsest column first, then the entry of smallest
    magnitude.  Independent of the modular engine; used for cross-checks.
    The basis spans the same space but is not in the canonical form that
    `nullspace` returns.
    """
    rows = matrix.int_rows()
    ncols = matrix.cols
    dense = []
    for cols, vals in rows:
        row = [0] * ncols
        for c, v in zip(cols, vals):
            row[c] = v
        dense.append(row)
    active = [i for i, row in enumerate(dense) if any(row)]
    used_cols: set[int] = set()
    done: list[tuple[int, list[int]]] = []
    prev = 1
    while active:
        counts: dict[int, int] = {}
        for i in active:
            row = dense[i]
            for c in range(ncols):
                if c not in used_cols and row[c]:
                    counts[c] = counts.get(c, 0) + 1
        if not counts:
            break
        col = min(counts, key=lambda c: (counts[c], c))
        piv_idx = min(
            (i for i in active if dense[i][col]),
            key=lambda i: (_ABS(dense[i][col]), active.index(i)),
        )
        piv_row = dense[piv_idx]
        piv = piv_row[col]
        for i in active:
            if i == piv_idx:
                continue
            row = dense[i]
            f = row[col]
            for c in range(ncols):
                if c in used_cols:
                    continue
                row[c] = (piv * row[c] - f * piv_row[c]) // prev
        prev = piv
        used_cols.add(col)
        done.append((col, piv_row))
        active = [i for i in active if i != piv_idx and any(dense[i])]
    free = [c for c in range(ncols) if c not in used_cols]
    vectors = []
    for f in free:
        x: dict[int, Fraction] = {f: Fraction(1)}
        for pcol, row in reversed(done):
            s = sum((Fraction(row[c]) * x[c] for c in x if c != pcol and row[c]), Fraction(0))
            x[pcol] = -s / Fraction(row[pcol])
        vectors.append([x.get(c, Fraction(0)) for c in range(ncols)])
    for vec in vectors:  # exact sanity check of the cross-check path itself
        for cols, vals in rows:
            if sum(Fraction(v) * vec[c] for c, v in zip(cols, vals)) != 0:
                raise VerificationError("bareiss elimination produced a bad vector")
    return vectors


# ---------------------------------------------------------------------------
# public operations


def nullspace_int_rows(rows: list[IntRow], ncols: int) -> list[list[Fraction]]:
    """Certified nullspace basis for integer sparse rows (engine entry point)."""
    return _nullspace_modular(rows, ncols)[0]


def nullspace_with_free(rows: list[IntRow], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Like nullspace_int_rows, also reporting each vector's free column."""
    return _nullspace_modular(rows, ncols)


def certify_zero_product(rows: list[IntRow], ncols: int, vectors: list[list[Fraction]]) -> bool:
    """Exact proof (via the modulus bound) that M.x = 0 for every vector."""
    for vec in vectors:
        if len(vec) != ncols:
            raise ValueError("vector length mismatch")
    return _verify_nullspace(rows, ncols, [[Fraction(x) for x in v] for v in vectors], [])


def nullspace(matrix: RationalMatrix) -> list[list[Fraction]]:
    """Certified basis of the right nullspace, in reduced (RREF) convention:
    one vector per free column, with an identity pattern on the free columns."""
    return _nullspace_modular(matrix.int_rows(), matrix.cols)[0]


def rank(matrix: RationalMatrix) -> int:
    """Exact rank over the rationals (cols minus certified nullity)."""
    return matrix.cols - len(nullspace(matrix))
