"""Dense linear algebra over the prime field F_p with numpy integer arrays."""

from __future__ import annotations

import numpy as np


def as_fp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p.

    Pivots are taken left to right, so the result is canonical for the row
    space.  Returns ``(R, pivot_columns)``; zero rows are kept at the bottom.
    """
    r = as_fp(a, p).copy()
    if r.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        r[row] = (r[row] * inv) % p
        others = np.nonzero(r[:, col])[0]
        for o in others:
            if o != row:
                r[o] = (r[o] - r[o, col] * r[row]) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def row_basis(a, p: int) -> np.ndarray:
    """Canonical (reduced echelon) basis of the row space, shape ``(rank, cols)``."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[-1] if a.ndim == 2 else 0), dtype=np.int64)
    r, piv = rref(a, p)
    return r[: len(piv)]


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows, reduced echelon) of ``{x : a @ x = 0}`` over F_p."""
    a = as_fp(a, p)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, fc]) % p
    return row_basis(basis, p) if len(free) else basis


def inverse(a, p: int) -> np.ndarray:
    a = as_fp(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    r, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular over F_p")
    return r[:, n:]


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x = b`` (free variables set to zero), or None."""
    a = as_fp(a, p)
    b = as_fp(b, p).reshape(-1, 1)
    cols = a.shape[1]
    r, piv = rref(np.hstack([a, b]), p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return x


def in_span(v, rows, p: int) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    v = as_fp(v, p).reshape(1, -1)
    if rows.size == 0:
        return not v.any()
    return rank(np.vstack([rows, v]), p) == rank(rows, p)


def complement(sub_rows, ambient_rows, p: int) -> np.ndarray:
    """Rows of ``ambient_rows`` greedily chosen (in order) to complete ``sub_rows``.

    The chosen vectors span a complement of span(sub_rows) inside
    span(sub_rows) + span(ambient_rows).
    """
    sub = np.asarray(sub_rows, dtype=np.int64).reshape(-1, np.asarray(ambient_rows).shape[-1])
    chosen: list[np.ndarray] = []
    current = sub
    r0 = rank(current, p) if current.size else 0
    for v in np.asarray(ambient_rows, dtype=np.int64):
        trial = np.vstack([current, v]) if current.size else v.reshape(1, -1)
        r1 = rank(trial, p)
        if r1 > r0:
            chosen.append(v % p)
            current, r0 = trial, r1
    width = np.asarray(ambient_rows).shape[-1]
    return np.array(chosen, dtype=np.int64).reshape(-1, width)


def intersect(rows_a, rows_b, p: int) -> np.ndarray:
    """Basis of span(rows_a) ∩ span(rows_b), reduced echelon."""
    a = np.asarray(rows_a, dtype=np.int64)
    b = np.asarray(rows_b, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        width = a.shape[-1] if a.ndim == 2 else b.shape[-1]
        return np.zeros((0, width), dtype=np.int64)
    # x a - y b = 0  <=>  (x, y) in left kernel of [a; -b]
    stacked = np.vstack([a, (-b) % p])
    coeffs = nullspace(stacked.T, p)
    if coeffs.size == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    vecs = coeffs[:, : a.shape[0]] @ a % p
    return row_basis(vecs, p)


def gl_order(n: int, q: int) -> int:
    """|GL(n, q)| = prod_{i<n} (q^n - q^i)."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out
