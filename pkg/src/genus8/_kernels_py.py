"""Numpy fallback for the compiled kernels; same signatures and results."""

from __future__ import annotations

import numpy as np

from .projective import points_array

BATCH = 8192


def _inverse_table(p):
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, -1, p)
    return t


def batched_rank(A: np.ndarray, p: int) -> np.ndarray:
    """Ranks mod p of a stack of matrices, shape (N, r, c)."""
    A = np.array(A, dtype=np.int64) % p
    N, r, c = A.shape
    inv = _inverse_table(p)
    row = np.zeros(N, dtype=np.int64)
    ridx = np.arange(r)
    for col in range(c):
        cand = (A[:, :, col] != 0) & (ridx[None, :] >= row[:, None])
        has = cand.any(axis=1) & (row < r)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        prow = cand[sel].argmax(axis=1)
        cur = row[sel]
        top = A[sel, cur].copy()
        A[sel, cur] = A[sel, prow]
        A[sel, prow] = top
        piv = A[sel, cur, col]
        A[sel, cur] = (A[sel, cur] * inv[piv][:, None]) % p
        f = A[sel, :, col].copy()
        f[ridx[None, :] <= cur[:, None]] = 0
        A[sel] = (A[sel] - f[:, :, None] * A[sel, cur][:, None, :]) % p
        row[sel] += 1
    return row


def form_ranks(p, grams, start, stop):
    grams = np.asarray(grams, dtype=np.int64)
    k = grams.shape[0]
    out = np.zeros(stop - start, dtype=np.uint8)
    for s in range(start, stop, BATCH):
        e = min(stop, s + BATCH)
        u = points_array(p, k, s, e)
        M = np.einsum("ni,iab->nab", u, grams) % p
        out[s - start:e - start] = batched_rank(M, p)
    return out


def palatini_ranks(p, ty, tx, start, stop):
    ty = np.asarray(ty, dtype=np.int64)
    tx = np.asarray(tx, dtype=np.int64)
    m = ty.shape[0]
    ry = np.zeros(stop - start, dtype=np.uint8)
    rx = np.zeros(stop - start, dtype=np.uint8)
    for s in range(start, stop, BATCH):
        e = min(stop, s + BATCH)
        v = points_array(p, m, s, e)
        ry[s - start:e - start] = batched_rank(np.einsum("na,aij->nij", v, ty) % p, p)
        rx[s - start:e - start] = batched_rank(np.einsum("na,aij->nij", v, tx) % p, p)
    return ry, rx


def rref_mod_p(M, p):
    A = np.array(M, dtype=np.int64) % p
    nr, nc = A.shape
    row = 0
    pivots = []
    for col in range(nc):
        if row == nr:
            break
        nz = np.nonzero(A[row:, col])[0]
        if not len(nz):
            continue
        piv = row + nz[0]
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        A[row] = (A[row] * pow(int(A[row, col]), -1, p)) % p
        f = A[:, col].copy()
        f[row] = 0
        A = (A - f[:, None] * A[row][None, :]) % p
        pivots.append(col)
        row += 1
    return A[:row].copy(), pivots
