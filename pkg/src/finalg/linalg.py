"""Gaussian elimination over GF(q) on integer code matrices."""
from __future__ import annotations

import numpy as np

from .gfield import FiniteField


def rref(M, F: FiniteField) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.vmul(R[r], F.vinv(R[r, c]))
        factors = R[:, c].copy()
        factors[r] = 0
        mask = factors != 0
        if mask.any():
            R[mask] = F.vsub(R[mask], F.vmul(factors[mask, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(M, F: FiniteField) -> int:
    return len(rref(M, F)[1])


def nullspace(M, F: FiniteField) -> np.ndarray:
    """Rows spanning {x : M x = 0}; one vector per free column, 1 in that column."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, pivots = rref(M, F) if M.shape[0] else (np.zeros((0, cols), np.int64), [])
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for idx, f in enumerate(free):
        out[idx, f] = 1
        for r, pc in enumerate(pivots):
            out[idx, pc] = F.vneg(R[r, f])
    return out


def row_basis(vectors, F: FiniteField, n: int) -> np.ndarray:
    """RREF basis of the span of the given rows (possibly empty)."""
    V = np.asarray(vectors, dtype=np.int64).reshape(-1, n)
    if V.shape[0] == 0:
        return V
    return rref(V, F)[0]


def coordinates(basis: np.ndarray, pivots: list[int], v, F: FiniteField) -> np.ndarray | None:
    """Coordinates of v in an RREF basis, or None if v is outside the span."""
    v = np.asarray(v, dtype=np.int64)
    c = v[..., pivots]
    recon = F.vsum(F.vmul(c[..., :, None], basis), axis=-2) if len(pivots) else np.zeros_like(v)
    if not np.array_equal(recon, v):
        return None
    return c


def pivots_of(basis: np.ndarray) -> list[int]:
    return [int(np.nonzero(row)[0][0]) for row in basis]


def batched_rank_mod_p(mats, p: int) -> np.ndarray:
    """Rank of each matrix in a (B, r, c) stack over the prime field F_p."""
    A = np.array(mats, dtype=np.int64, copy=True) % p
    B, r, c = A.shape
    inv = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    row = np.zeros(B, dtype=np.int64)
    bidx = np.arange(B)
    rows = np.arange(r)
    for col in range(c):
        nz = (A[:, :, col] != 0) & (rows[None, :] >= row[:, None])
        has = nz.any(axis=1) & (row < r)
        if not has.any():
            continue
        b = bidx[has]
        piv = np.argmax(nz[b], axis=1)
        tgt = row[b]
        tmp = A[b, piv].copy()
        A[b, piv] = A[b, tgt]
        A[b, tgt] = tmp
        A[b, tgt] = (A[b, tgt] * inv[A[b, tgt, col]][:, None]) % p
        factors = A[b, :, col].copy()
        factors[np.arange(b.size), tgt] = 0
        A[b] = (A[b] - factors[:, :, None] * A[b, tgt][:, None, :]) % p
        row[b] += 1
    return row
