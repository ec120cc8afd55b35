# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled forward elimination mod p (the hot kernel).

Must stay arithmetically identical to py_fallback.ref_forward: same pivot
rule, same normalization, so the backends are interchangeable bit for bit.
"""

from libc.stdint cimport int64_t


cdef inline int64_t _modinv(int64_t a, int64_t p):
    # extended Euclid; p prime, 0 < a < p
    cdef int64_t old_r = a, r = p, old_s = 1, s = 0, q, t
    while r != 0:
        q = old_r / r
        t = old_r - q * r
        old_r = r
        r = t
        t = old_s - q * s
        old_s = s
        s = t
    if old_s < 0:
        old_s += p
    return old_s


def ref_forward(int64_t[:, ::1] a, long long p_in):
    """In-place row echelon form mod p; returns (rank, pivot columns).

    Entries must lie in [0, p) with p < 2**31 prime.  Pivot rows end up
    normalized to a unit pivot.
    """
    cdef int64_t p = p_in
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t pr = 0, i, j, c, prow
    cdef int64_t piv, inv, f, tmp, v
    pivots = []
    for c in range(cols):
        if pr == rows:
            break
        prow = -1
        for i in range(pr, rows):
            if a[i, c] != 0:
                prow = i
                break
        if prow < 0:
            continue
        if prow != pr:
            for j in range(c, cols):
                tmp = a[pr, j]
                a[pr, j] = a[prow, j]
                a[prow, j] = tmp
        piv = a[pr, c]
        if piv != 1:
            inv = _modinv(piv, p)
            for j in range(c, cols):
                if a[pr, j] != 0:
                    a[pr, j] = (a[pr, j] * inv) % p
        for i in range(pr + 1, rows):
            f = a[i, c]
            if f != 0:
                a[i, c] = 0
                for j in range(c + 1, cols):
                    v = a[pr, j]
                    if v != 0:
                        tmp = a[i, j] - f * v
                        tmp = tmp % p
                        if tmp < 0:
                            tmp += p
                        a[i, j] = tmp
        pivots.append(c)
        pr += 1
    return pr, pivots
