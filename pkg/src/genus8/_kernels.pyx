# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled mod-p kernels for the exhaustive scans.

Point indices follow :mod:`genus8.projective`: representatives of P^(m-1)(F_p)
in increasing lexicographic order.
"""

import numpy as np

DEF MAXR = 16
DEF MAXC = 16


cdef inline long long _inv(long long a, long long p) nogil:
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int _rank(long long[MAXR][MAXC] A, int nr, int nc, long long p) nogil:
    cdef int row = 0, col, i, j, piv
    cdef long long inv, f, tmp
    for col in range(nc):
        if row == nr:
            break
        piv = -1
        for i in range(row, nr):
            if A[i][col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(nc):
                tmp = A[row][j]
                A[row][j] = A[piv][j]
                A[piv][j] = tmp
        inv = _inv(A[row][col], p)
        for j in range(col, nc):
            A[row][j] = (A[row][j] * inv) % p
        for i in range(row + 1, nr):
            f = A[i][col]
            if f != 0:
                for j in range(col, nc):
                    A[i][j] = (A[i][j] - f * A[row][j]) % p
                    if A[i][j] < 0:
                        A[i][j] += p
        row += 1
    return row


cdef void _decode(long long idx, int m, long long p, long long* out) nogil:
    # strata by leading position m-1, m-2, ..., 0; stratum i holds p^(m-1-i) points
    cdef int lead = m - 1, k
    cdef long long size = 1
    while idx >= size:
        idx -= size
        lead -= 1
        size *= p
    for k in range(m):
        out[k] = 0
    out[lead] = 1
    for k in range(m - 1, lead, -1):
        out[k] = idx % p
        idx //= p


def form_ranks(long long p, long long[:, :, ::1] grams, long long start, long long stop):
    """Rank of sum_i u_i * grams[i] for each point u of P^(k-1), k = len(grams)."""
    cdef int k = grams.shape[0], n = grams.shape[1]
    cdef long long[MAXR][MAXC] A
    cdef long long u[MAXC]
    cdef long long idx, s
    cdef int i, a, b
    out = np.zeros(stop - start, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    with nogil:
        for idx in range(start, stop):
            _decode(idx, k, p, u)
            for a in range(n):
                for b in range(n):
                    s = 0
                    for i in range(k):
                        s += u[i] * grams[i, a, b]
                    A[a][b] = s % p
            res[idx - start] = _rank(A, n, n, p)
    return out


def palatini_ranks(long long p, long long[:, :, ::1] ty, long long[:, :, ::1] tx, long long start, long long stop):
    """Ranks of the two contraction maps v -> sum_a v_a t[a] at each point of P^5."""
    cdef int m = ty.shape[0], r = ty.shape[1], c = ty.shape[2]
    cdef long long[MAXR][MAXC] A
    cdef long long[MAXR][MAXC] B
    cdef long long v[MAXC]
    cdef long long idx, s1, s2
    cdef int a, i, j
    ry = np.zeros(stop - start, dtype=np.uint8)
    rx = np.zeros(stop - start, dtype=np.uint8)
    cdef unsigned char[::1] oy = ry
    cdef unsigned char[::1] ox = rx
    with nogil:
        for idx in range(start, stop):
            _decode(idx, m, p, v)
            for i in range(r):
                for j in range(c):
                    s1 = 0
                    s2 = 0
                    for a in range(m):
                        if v[a] != 0:
                            s1 += v[a] * ty[a, i, j]
                            s2 += v[a] * tx[a, i, j]
                    A[i][j] = s1 % p
                    B[i][j] = s2 % p
            oy[idx - start] = _rank(A, r, c, p)
            ox[idx - start] = _rank(B, r, c, p)
    return ry, rx


def rref_mod_p(long long[:, ::1] M, long long p):
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    cdef Py_ssize_t nr = M.shape[0], nc = M.shape[1]
    R = np.array(M, dtype=np.int64) % p
    cdef long long[:, ::1] A = R
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef long long inv, f, tmp
    pivots = []
    for col in range(nc):
        if row == nr:
            break
        piv = -1
        for i in range(row, nr):
            if A[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(nc):
                tmp = A[row, j]
                A[row, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv(A[row, col], p)
        for j in range(col, nc):
            A[row, j] = (A[row, j] * inv) % p
        for i in range(nr):
            if i != row:
                f = A[i, col]
                if f != 0:
                    for j in range(col, nc):
                        A[i, j] = (A[i, j] - f * A[row, j]) % p
                        if A[i, j] < 0:
                            A[i, j] += p
        pivots.append(col)
        row += 1
    return R[:row].copy(), pivots
