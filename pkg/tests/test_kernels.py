"""Backend parity: the compiled and pure-Python kernels must agree bitwise."""

from __future__ import annotations

import random

import numpy as np
import pytest

from supersmooth import _kernels
from supersmooth._kernels import available_backends, get_backend, modp_matmul, nullspace_residues

P = 2147483647  # fixed 31-bit prime for these tests


def _random_matrix(rng, rows, cols, density=0.6):
    a = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                a[i, j] = rng.randrange(P)
    return a


def test_backend_selection_reports():
    assert _kernels.BACKEND in ("compiled", "python")
    assert "python" in available_backends()


def test_unknown_backend_rejected():
    with pytest.raises(KeyError):
        get_backend("nope")


@pytest.mark.skipif(
    "compiled" not in available_backends(), reason="compiled kernel not built"
)
def test_ref_forward_parity():
    compiled = get_backend("compiled")
    python = get_backend("python")
    rng = random.Random(42)
    for trial in range(25):
        rows = rng.randint(1, 12)
        cols = rng.randint(1, 12)
        a = _random_matrix(rng, rows, cols, density=rng.choice([0.2, 0.5, 0.9]))
        b = a.copy()
        rank_c, piv_c = compiled.ref_forward(a, P)
        rank_p, piv_p = python.ref_forward(b, P)
        assert rank_c == rank_p
        assert piv_c == piv_p
        assert np.array_equal(a, b)


def test_ref_forward_known_case():
    a = np.array([[2, 4], [1, 2], [3, 0]], dtype=np.int64)
    rank, pivots = _kernels.ref_forward(a.copy(), P)
    assert rank == 2 and pivots == [0, 1]


def test_ref_forward_empty_shapes():
    rank, pivots = _kernels.ref_forward(np.zeros((0, 4), dtype=np.int64), P)
    assert rank == 0 and pivots == []
    rank, pivots = _kernels.ref_forward(np.zeros((3, 0), dtype=np.int64), P)
    assert rank == 0 and pivots == []


def test_modp_matmul_matches_bigint():
    rng = random.Random(7)
    a = _random_matrix(rng, 5, 7, density=1.0)
    b = _random_matrix(rng, 7, 4, density=1.0)
    got = modp_matmul(a, b, P)
    for i in range(5):
        for j in range(4):
            want = sum(int(a[i, k]) * int(b[k, j]) for k in range(7)) % P
            assert int(got[i, j]) == want


def test_modp_matmul_no_overflow_near_prime():
    # entries at p-1 are the worst case for the 16-bit split
    a = np.full((2, 3), P - 1, dtype=np.int64)
    b = np.full((3, 2), P - 1, dtype=np.int64)
    got = modp_matmul(a, b, P)
    want = (3 * (P - 1) * (P - 1)) % P
    assert np.all(got == want)


def test_nullspace_residues_solve():
    # x + 2y + 3z = 0 mod P, pivot at column 0: residues give y,z dependence
    a = np.array([[1, 2, 3]], dtype=np.int64)
    rank, pivots = _kernels.ref_forward(a, P)
    r = nullspace_residues(a, rank, pivots, P)
    assert r.shape == (1, 2)
    for vec in ((P - int(r[0, 0]), 1, 0), (P - int(r[0, 1]), 0, 1)):
        assert (vec[0] + 2 * vec[1] + 3 * vec[2]) % P == 0
