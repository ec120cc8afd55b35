"""Pure-Python (numpy vectorized) forward elimination mod p.

Mirrors the compiled kernel exactly: same pivot rule (first nonzero row,
columns left to right), same normalization, so both backends produce
bit-identical row-echelon forms.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def ref_forward(a: np.ndarray, p: int) -> tuple[int, list[int]]:
    """In-place row echelon form mod p; returns (rank, pivot columns).

    Entries must lie in [0, p) with p < 2**31 prime.  Pivot rows end up
    normalized to a unit pivot.
    """
    rows, cols = a.shape
    pr = 0
    pivots: list[int] = []
    for c in range(cols):
        if pr == rows:
            break
        col = a[pr:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        prow = pr + int(nz[0])
        if prow != pr:
            a[[pr, prow]] = a[[prow, pr]]
        piv = int(a[pr, c])
        if piv != 1:
            inv = pow(piv, -1, p)
            a[pr, c:] = (a[pr, c:] * inv) % p
        f = a[pr + 1 :, c]
        hit = np.nonzero(f)[0]
        if hit.size:
            block = a[pr + 1 :, c:]
            block[hit] = (block[hit] - f[hit, None] * a[pr, c:][None, :]) % p
        pivots.append(c)
        pr += 1
    return pr, pivots
