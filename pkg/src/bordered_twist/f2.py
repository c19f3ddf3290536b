"""Dense linear algebra over F2 on numpy uint8 arrays."""

from __future__ import annotations

import numpy as np

F2Matrix = np.ndarray


def as_f2(m) -> np.ndarray:
    a = np.array(m, dtype=np.uint8)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    return a & 1


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = as_f2(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def f2_rank(m) -> int:
    a = as_f2(m)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def nullspace(m) -> np.ndarray:
    """Basis of {v : m v = 0}, one vector per row."""
    a = as_f2(m)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.uint8)
    r, pivots = rref(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, p in enumerate(pivots):
            basis[k, p] = r[row, f]
    return basis


def solve(a, b) -> np.ndarray | None:
    """One solution x of a x = b, or None when inconsistent."""
    a = as_f2(a)
    b = np.asarray(b, dtype=np.uint8).reshape(-1) & 1
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1) if rows else np.zeros((0, cols + 1), np.uint8)
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = r[row, cols]
    return x


def in_span(vectors, v) -> bool:
    vs = as_f2(vectors) if len(vectors) else np.zeros((0, len(v)), np.uint8)
    return f2_rank(np.vstack([vs, as_f2(v)])) == f2_rank(vs)


def f2_homology(d_in, d_out) -> tuple[int, list[np.ndarray]]:
    """Homology at the middle of  . --d_in--> V --d_out--> .

    Matrices act on column vectors: d_in is (dim V x m), d_out is (k x dim V).
    Returns the dimension and representatives completing a basis of the
    boundaries to a basis of the cycles, each reduced against the boundaries.
    """
    d_in = np.asarray(d_in, dtype=np.uint8) & 1
    d_out = np.asarray(d_out, dtype=np.uint8) & 1
    n = d_out.shape[1]
    if d_in.shape[0] != n:
        raise ValueError("shape mismatch between d_in and d_out")
    if ((d_out.astype(np.int64) @ d_in.astype(np.int64)) % 2).any():
        raise ValueError("d_out o d_in is nonzero")
    cycles = nullspace(d_out)
    echelon, piv = rref(d_in.T) if d_in.shape[1] else (np.zeros((0, n), np.uint8), [])
    basis = echelon[: len(piv)]
    reps: list[np.ndarray] = []
    current = basis
    for z in cycles:
        stacked = np.vstack([current, z])
        if f2_rank(stacked) > current.shape[0]:
            reps.append(_reduce_against(z, basis))
            current = stacked
    return len(reps), reps


def _reduce_against(v: np.ndarray, basis: np.ndarray) -> np.ndarray:
    # basis is in reduced echelon form; clear its pivot columns from v
    v = v.copy()
    for row in basis:
        p = int(np.nonzero(row)[0][0])
        if v[p]:
            v ^= row
    return v


def inverse(m) -> np.ndarray:
    """Inverse of a square F2 matrix; ValueError when singular."""
    a = as_f2(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    r, pivots = rref(np.concatenate([a, np.eye(n, dtype=np.uint8)], axis=1))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over F2")
    return r[:, n:].copy()
