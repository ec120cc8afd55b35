"""Backend-independent mod-p numpy helpers.

Primes used throughout are < 2**31, so single products fit in int64; dot
products are done with a 16-bit split so accumulated sums stay in range.
"""

from __future__ import annotations

import numpy as np

# with p < 2**31: hi < 2**15, lo < 2**16, so hi*b sums stay < 2**62 and
# lo*b sums stay < 2**63 for up to 2**16 terms
_CHUNK = 1 << 16


def modp_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for int64 arrays with entries in [0, p), p < 2**31."""
    if a.shape[1] != b.shape[0]:
        raise ValueError("shape mismatch")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, a.shape[1], _CHUNK):
        blk_a = a[:, start : start + _CHUNK]
        blk_b = b[start : start + _CHUNK]
        hi = (blk_a >> 16) @ blk_b
        lo = (blk_a & 0xFFFF) @ blk_b
        out = (out + ((hi % p) << 16) + lo) % p
    return out


def free_columns(ncols: int, pivots: list[int]) -> list[int]:
    pivot_set = set(pivots)
    return [c for c in range(ncols) if c not in pivot_set]


def nullspace_residues(a: np.ndarray, rank: int, pivots: list[int], p: int) -> np.ndarray:
    """Entries of the fully reduced rows at the free columns.

    `a` must be the row-echelon output of ref_forward (unit pivots).  The
    nullspace vector for free column f is then e_f - sum_i R[i, f] e_{piv_i}.
    """
    free = free_columns(a.shape[1], pivots)
    r = a[:rank, free].copy() if rank else np.zeros((0, len(free)), dtype=np.int64)
    for i in range(rank - 2, -1, -1):
        coeffs = a[i, pivots[i + 1 :]]
        if coeffs.any():
            s = modp_matmul(coeffs[None, :], r[i + 1 :], p)[0]
            r[i] = (r[i] - s) % p
    return r
