"""Additive (F_p-linear) maps of F_p^m, acting on integer-encoded vectors.

A vector with coordinates ``(c_0, ..., c_{m-1})`` is encoded as the integer
``sum c_i p^i``; field elements of GF(p^m) use the same encoding in the power
basis, so an :class:`AdditiveMap` acts directly on field elements.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg


@lru_cache(maxsize=None)
def digit_table(p: int, m: int) -> np.ndarray:
    """``(p**m, m)`` array whose row ``x`` holds the base-p digits of ``x``."""
    q = p**m
    x = np.arange(q, dtype=np.int64)
    out = np.empty((q, m), dtype=np.int64)
    for i in range(m):
        out[:, i] = x % p
        x = x // p
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def place_values(p: int, m: int) -> np.ndarray:
    v = p ** np.arange(m, dtype=np.int64)
    v.setflags(write=False)
    return v


@lru_cache(maxsize=None)
def addition_table(p: int, m: int) -> np.ndarray:
    """``(q, q)`` table of vector sums, q = p**m."""
    d = digit_table(p, m)
    t = ((d[:, None, :] + d[None, :, :]) % p) @ place_values(p, m)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def negation_table(p: int, m: int) -> np.ndarray:
    t = ((-digit_table(p, m)) % p) @ place_values(p, m)
    t.setflags(write=False)
    return t


def to_digits(x: int, p: int, m: int) -> np.ndarray:
    out = np.empty(m, dtype=np.int64)
    for i in range(m):
        x, out[i] = divmod(x, p)
    return out


def from_digits(v: Sequence[int], p: int) -> int:
    x = 0
    for c in reversed(list(v)):
        x = x * p + int(c) % p
    return x


def pack_rows(rows: np.ndarray, p: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64) % p
    return rows @ place_values(p, rows.shape[-1])


def vec_add(x: int, y: int, p: int, m: int) -> int:
    if p == 2:
        return x ^ y
    out, place = 0, 1
    for _ in range(m):
        x, a = divmod(x, p)
        y, b = divmod(y, p)
        out += ((a + b) % p) * place
        place *= p
    return out


def vec_neg(x: int, p: int, m: int) -> int:
    if p == 2:
        return x
    out, place = 0, 1
    for _ in range(m):
        x, a = divmod(x, p)
        out += ((-a) % p) * place
        place *= p
    return out


def vec_sub(x: int, y: int, p: int, m: int) -> int:
    return vec_add(x, vec_neg(y, p, m), p, m)


def vec_scale(c: int, x: int, p: int, m: int) -> int:
    c %= p
    out, place = 0, 1
    for _ in range(m):
        x, a = divmod(x, p)
        out += ((a * c) % p) * place
        place *= p
    return out


class AdditiveMap:
    """An m×m matrix over F_p acting on F_p^m (column j is the image of e_j)."""

    __slots__ = ("p", "matrix", "_table", "_key")

    def __init__(self, matrix, p: int):
        mat = np.array(matrix, dtype=np.int64) % p
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"AdditiveMap needs a square matrix, got shape {mat.shape}")
        mat.setflags(write=False)
        self.p = p
        self.matrix = mat
        self._table = None
        self._key = None

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, m: int, p: int) -> "AdditiveMap":
        return cls(np.eye(m, dtype=np.int64), p)

    @classmethod
    def zero(cls, m: int, p: int) -> "AdditiveMap":
        return cls(np.zeros((m, m), dtype=np.int64), p)

    @classmethod
    def from_function(cls, fn: Callable[[int], int], p: int, m: int) -> "AdditiveMap":
        """Matrix of an additive function given by its values on the unit vectors."""
        cols = [to_digits(fn(p**j), p, m) for j in range(m)]
        return cls(np.array(cols, dtype=np.int64).T.reshape(m, m), p)

    @classmethod
    def from_basis_images(cls, basis: Sequence[int], images: Sequence[int], p: int, m: int) -> "AdditiveMap":
        """The unique additive map sending ``basis[i]`` to ``images[i]``."""
        b = np.array([to_digits(x, p, m) for x in basis], dtype=np.int64).T
        im = np.array([to_digits(y, p, m) for y in images], dtype=np.int64).T
        return cls(im @ linalg.inverse(b, p) % p, p)

    # basic properties ---------------------------------------------------

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.p, self.m, self.matrix.tobytes())
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, AdditiveMap) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"AdditiveMap(p={self.p}, rows={self.to_rows()})"

    def to_rows(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.matrix]

    @property
    def table(self) -> np.ndarray:
        """Images of every vector, indexed by integer encoding."""
        if self._table is None:
            d = digit_table(self.p, self.m)
            t = pack_rows(d @ self.matrix.T, self.p)
            t.setflags(write=False)
            self._table = t
        return self._table

    def __call__(self, x: int) -> int:
        if self.p**self.m <= 1 << 16:
            return int(self.table[x])
        v = self.matrix @ to_digits(x, self.p, self.m) % self.p
        return from_digits(v, self.p)

    def rank(self) -> int:
        return linalg.rank(self.matrix, self.p)

    @property
    def is_invertible(self) -> bool:
        return self.rank() == self.m

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def is_identity(self) -> bool:
        return bool((self.matrix == np.eye(self.m, dtype=np.int64)).all())

    # algebra ------------------------------------------------------------

    def _check(self, other: "AdditiveMap") -> None:
        if self.p != other.p or self.m != other.m:
            raise ValueError("AdditiveMap shapes/characteristics differ")

    def __matmul__(self, other: "AdditiveMap") -> "AdditiveMap":
        """Composition ``self ∘ other``."""
        self._check(other)
        return AdditiveMap(self.matrix @ other.matrix, self.p)

    def __add__(self, other: "AdditiveMap") -> "AdditiveMap":
        self._check(other)
        return AdditiveMap(self.matrix + other.matrix, self.p)

    def __sub__(self, other: "AdditiveMap") -> "AdditiveMap":
        self._check(other)
        return AdditiveMap(self.matrix - other.matrix, self.p)

    def __neg__(self) -> "AdditiveMap":
        return AdditiveMap(-self.matrix, self.p)

    def scaled(self, c: int) -> "AdditiveMap":
        return AdditiveMap(self.matrix * c, self.p)

    def inverse(self) -> "AdditiveMap":
        return AdditiveMap(linalg.inverse(self.matrix, self.p), self.p)

    def power(self, k: int) -> "AdditiveMap":
        out = AdditiveMap.identity(self.m, self.p)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out @ base
        return out

    # subspaces (as lists of integer-encoded basis vectors) ---------------

    def image_basis(self) -> list[int]:
        rows = linalg.row_basis(self.matrix.T, self.p)
        return [from_digits(r, self.p) for r in rows]

    def kernel_basis(self) -> list[int]:
        rows = linalg.nullspace(self.matrix, self.p)
        return [from_digits(r, self.p) for r in rows]


def span(vectors: Iterable[int], p: int, m: int) -> frozenset[int]:
    """All F_p-linear combinations of integer-encoded vectors."""
    out = {0}
    for v in vectors:
        if v in out:
            continue
        new = set(out)
        for c in range(1, p):
            cv = vec_scale(c, v, p, m)
            new.update(vec_add(w, cv, p, m) for w in out)
        out = new
    return frozenset(out)


def basis_rows(vectors: Iterable[int], p: int, m: int) -> np.ndarray:
    vs = [to_digits(v, p, m) for v in vectors]
    if not vs:
        return np.zeros((0, m), dtype=np.int64)
    return np.array(vs, dtype=np.int64)
