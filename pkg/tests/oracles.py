"""Independent reference computations used to freeze expected values.

Nothing here imports the package's arithmetic: finite fields go through
sympy's polynomial routines and group orders through sympy's Schreier-Sims.
Isomorphism testing is a plain generator-image search on Cayley tables.
"""

from __future__ import annotations

import itertools

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_irreducible_p, gf_mul, gf_rem


def int_to_poly(x: int, p: int) -> list[int]:
    """Descending coefficient list (sympy convention) of the element sum c_i p^i."""
    digits = []
    while x:
        digits.append(x % p)
        x //= p
    return list(reversed(digits)) or [0]


def poly_to_int(poly: list[int], p: int) -> int:
    out = 0
    for c in poly:
        out = out * p + int(c) % p
    return out


def gf_product(x: int, y: int, p: int, modulus_ascending: list[int]) -> int:
    mod = [ZZ(c) for c in reversed(modulus_ascending)]
    prod = gf_mul([ZZ(c) for c in int_to_poly(x, p)], [ZZ(c) for c in int_to_poly(y, p)], p, ZZ)
    return poly_to_int(gf_rem(prod, mod, p, ZZ), p)


def gf_sum(x: int, y: int, p: int) -> int:
    return poly_to_int(gf_add([ZZ(c) for c in int_to_poly(x, p)], [ZZ(c) for c in int_to_poly(y, p)], p, ZZ), p)


def irreducible(modulus_ascending: list[int], p: int) -> bool:
    return bool(gf_irreducible_p([ZZ(c) for c in reversed(modulus_ascending)], p, ZZ))


def smallest_irreducible(p: int, m: int) -> list[int]:
    """First irreducible when coefficients are compared from the top degree down."""
    for tail in itertools.product(range(p), repeat=m):
        cand = list(reversed(tail)) + [1]
        if irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


def permutation_group_order(perms) -> int:
    gens = [Permutation([int(v) for v in row]) for row in perms]
    return int(PermutationGroup(gens).order())


def _closure_with_words(table: np.ndarray, gens: list[int]) -> dict[int, tuple[int, ...]]:
    """Each element reached from the identity as a word in ``gens``."""
    e = int(np.nonzero((table == np.arange(len(table))).all(axis=1))[0][0])
    words = {e: ()}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = int(table[x, g])
                if y not in words:
                    words[y] = words[x] + (i,)
                    nxt.append(y)
        frontier = nxt
    return words


def _small_generating_set(table: np.ndarray) -> list[int]:
    gens: list[int] = []
    reached = _closure_with_words(table, gens)
    for x in range(len(table)):
        if x not in reached:
            gens.append(x)
            reached = _closure_with_words(table, gens)
            if len(reached) == len(table):
                break
    return gens


def _element_orders(table: np.ndarray) -> list[int]:
    e = int(np.nonzero((table == np.arange(len(table))).all(axis=1))[0][0])
    out = []
    for x in range(len(table)):
        k, y = 1, x
        while y != e:
            y = int(table[y, x])
            k += 1
        out.append(k)
    return out


def find_isomorphism(t1: np.ndarray, t2: np.ndarray) -> dict[int, int] | None:
    """An explicit isomorphism between two Cayley tables, or None."""
    n = len(t1)
    if len(t2) != n:
        return None
    gens = _small_generating_set(t1)
    words = _closure_with_words(t1, gens)
    e2 = int(np.nonzero((t2 == np.arange(n)).all(axis=1))[0][0])
    o1, o2 = _element_orders(t1), _element_orders(t2)
    if sorted(o1) != sorted(o2):
        return None
    choices = [[y for y in range(n) if o2[y] == o1[g]] for g in gens]
    for images in itertools.product(*choices):
        phi = {}
        for x, w in words.items():
            y = e2
            for i in w:
                y = int(t2[y, images[i]])
            phi[x] = y
        if len(set(phi.values())) != n:
            continue
        if all(phi[int(t1[a, b])] == int(t2[phi[a], phi[b]]) for a in range(n) for b in range(n)):
            return phi
    return None
