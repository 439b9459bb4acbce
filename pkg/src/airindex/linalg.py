"""Exact integer and prime-field matrix arithmetic.

Dense, deterministic routines backing the encoder verification stack:
rank, left kernel and left-sided system solving over GF(p), plus exact
integer determinants via fraction-free elimination. Elimination always
picks the first usable pivot in column order, so kernels and solutions
are reproducible across runs.

Matrices are plain 2-D integer arrays (anything ``np.asarray`` accepts);
a field modulus is a plain int that must be prime, checked on entry.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "is_prime",
    "require_prime",
    "as_int_matrix",
    "rref_mod_p",
    "rank_mod_p",
    "left_kernel_mod_p",
    "solve_left",
    "det_exact",
]


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Trial-division primality check; cached, meant for small moduli."""
    if p < 2:
        return False
    if p in (2, 3):
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def require_prime(p) -> int:
    """Coerce to int and fail fast unless prime.

    Every GF(p) entry point funnels through this, so a composite modulus
    can never reach the arithmetic.
    """
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"field modulus must be prime, got {p}")
    return p


def as_int_matrix(mat) -> np.ndarray:
    """View the input as a 2-D int64 array."""
    a = np.asarray(mat, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def rref_mod_p(mat, p) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p).

    Returns ``(R, pivot_cols)``. The pivot for each column is the first
    row with a nonzero entry at or below the current row, scanning
    columns left to right; this fixes the output uniquely.
    """
    p = require_prime(p)
    R = as_int_matrix(mat) % p
    n_rows, n_cols = R.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        hits = np.nonzero(R[r:, c])[0]
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivot_cols.append(c)
        r += 1
    return R, pivot_cols


def rank_mod_p(mat, p) -> int:
    """Rank of ``mat`` over GF(p)."""
    _, pivot_cols = rref_mod_p(mat, p)
    return len(pivot_cols)


def left_kernel_mod_p(mat, p) -> np.ndarray:
    """Basis of ``{z : z @ mat == 0 (mod p)}``, one vector per row.

    The basis has ``rows(mat) - rank_mod_p(mat, p)`` vectors; each sets a
    single free coordinate to 1, in increasing coordinate order, so the
    result is deterministic.
    """
    M = as_int_matrix(mat)
    R, piv = rref_mod_p(M.T, p)
    p = require_prime(p)
    n = M.shape[0]
    piv_set = set(piv)
    free = [j for j in range(n) if j not in piv_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for idx, f in enumerate(free):
        basis[idx, f] = 1
        for row, c in enumerate(piv):
            basis[idx, c] = (-int(R[row, f])) % p
    return basis


def solve_left(mat, y, p) -> np.ndarray | None:
    """Solve ``u @ mat == y (mod p)``; ``None`` when inconsistent.

    Free coordinates are fixed to 0, so the returned solution is unique
    for a given pivot order even when the system is underdetermined.
    """
    p = require_prime(p)
    M = as_int_matrix(mat)
    yv = np.asarray(y, dtype=np.int64)
    if yv.ndim != 1 or yv.shape[0] != M.shape[1]:
        raise ValueError(
            f"right-hand side must have length {M.shape[1]}, got shape {yv.shape}"
        )
    aug = np.concatenate([M.T, yv.reshape(-1, 1) % p], axis=1)
    R, piv = rref_mod_p(aug, p)
    n_unknowns = M.shape[0]
    if piv and piv[-1] == n_unknowns:
        return None
    u = np.zeros(n_unknowns, dtype=np.int64)
    for row, c in enumerate(piv):
        u[c] = R[row, -1]
    return u


def det_exact(mat) -> int:
    """Exact integer determinant via fraction-free (Bareiss) elimination.

    Intermediate values are Python ints, so there is no overflow at any
    size; each intermediate division is exact by construction.
    """
    M = as_int_matrix(mat)
    n_rows, n_cols = M.shape
    if n_rows != n_cols:
        raise ValueError(f"determinant needs a square matrix, got {n_rows}x{n_cols}")
    n = n_rows
    if n == 0:
        return 1
    a = [[int(v) for v in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]
