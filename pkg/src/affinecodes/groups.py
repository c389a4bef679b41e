"""Finite groups given by multiplication tables, and isomorphism fingerprints."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .finite_field import prime_factors


@dataclass
class TableGroup:
    """Elements ``0..N-1`` with ``table[g, h] = g h``."""

    table: np.ndarray
    labels: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        idx = np.arange(self.order)
        hits = np.nonzero((self.table == idx[None, :]).all(axis=1))[0]
        if hits.size != 1:
            raise ValueError("table has no unique identity")
        return int(hits[0])

    def inverses(self) -> np.ndarray:
        e = self.identity
        rows, cols = np.nonzero(self.table == e)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        return inv

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def verify(self) -> None:
        """Exhaustive associativity and inverse check (meant for order <= 256)."""
        T = self.table
        n = self.order
        if sorted(np.unique(T).tolist()) != list(range(n)):
            raise ValueError("table is not closed on 0..N-1")
        for row in T:
            if len(set(row.tolist())) != n:
                raise ValueError("table rows must be permutations (Latin square)")
        left = T[T, :]  # (g h) k  indexed [g, h, k]
        right = T[:, T]  # g (h k)
        if not (left == right).all():
            raise ValueError("multiplication is not associative")
        self.inverses()

    def power_orders(self) -> np.ndarray:
        T = self.table
        e = self.identity
        idx = np.arange(self.order)
        orders = np.zeros(self.order, dtype=np.int64)
        cur = idx.copy()
        for k in range(1, self.order + 1):
            done = (cur == e) & (orders == 0)
            orders[done] = k
            if (orders > 0).all():
                break
            cur = T[cur, idx]
        return orders

    def center(self) -> np.ndarray:
        T = self.table
        return np.nonzero((T == T.T).all(axis=1))[0]

    def generated(self, gens) -> np.ndarray:
        """Subgroup generated by ``gens`` (sorted element indices)."""
        T = self.table
        e = self.identity
        elems = {e}
        frontier = [e]
        gens = list(dict.fromkeys(int(g) for g in gens))
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(T[x, g])
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return np.array(sorted(elems), dtype=np.int64)

    def derived_subgroup(self) -> np.ndarray:
        T = self.table
        inv = self.inverses()
        a = T[inv[:, None], inv[None, :]]  # g^-1 h^-1
        comm = T[a, T]  # g^-1 h^-1 g h
        return self.generated(np.unique(comm))


def _abelian_invariants(orders: np.ndarray) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an abelian group from its element orders."""
    n = len(orders)
    if n == 1:
        return ()
    primary: list[list[int]] = []
    for ell in prime_factors(n):
        # n_k = #{x : ord(x) divides ell^k}; n_k / n_{k-1} = ell^(# factors of order >= ell^k)
        part = 1
        while n % (part * ell) == 0:
            part *= ell
        powers = []
        k = 0
        prev = 1
        while prev < part:
            k += 1
            nk = int(np.sum((ell**k) % orders == 0))
            powers.append(round(math.log(nk // prev, ell)))
            prev = nk
        exps = []
        for k in range(len(powers)):
            ge_k = powers[k]
            ge_next = powers[k + 1] if k + 1 < len(powers) else 0
            exps.extend([k + 1] * (ge_k - ge_next))
        primary.append(sorted((ell**e for e in exps), reverse=True))
    width = max(len(x) for x in primary)
    factors = []
    for i in range(width):
        d = 1
        for comp in primary:
            if i < len(comp):
                d *= comp[i]
        factors.append(d)
    return tuple(sorted(factors))


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    exponent: int
    center_order: int
    derived_order: int
    order_histogram: tuple[tuple[int, int], ...]
    abelian_invariants: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "exponent": self.exponent,
            "center_order": self.center_order,
            "derived_order": self.derived_order,
            "order_histogram": [list(x) for x in self.order_histogram],
            "abelian_invariants": list(self.abelian_invariants) if self.abelian_invariants is not None else None,
        }

    def label(self) -> str:
        """Short human label: ``C2xC4`` for abelian groups, else order/center/histogram."""
        if self.abelian:
            inv = self.abelian_invariants or ()
            return "x".join(f"C{d}" for d in inv) or "1"
        hist = ",".join(f"{o}:{c}" for o, c in self.order_histogram)
        return f"nonabelian(order={self.order}, center={self.center_order}, orders={{{hist}}})"


def fingerprint(group) -> GroupFingerprint:
    """Isomorphism invariants of a group given as a table, TableGroup or RegularGroup."""
    if hasattr(group, "table") and not isinstance(group, np.ndarray):
        table = group.table
    else:
        table = group
    G = table if isinstance(table, TableGroup) else TableGroup(np.asarray(table))
    if G.order > 4096:
        raise ValueError("fingerprints are limited to groups of order <= 4096")
    orders = G.power_orders()
    abelian = G.is_abelian()
    exponent = 1
    for o in np.unique(orders):
        exponent = math.lcm(exponent, int(o))
    hist = tuple(sorted(Counter(int(o) for o in orders).items()))
    return GroupFingerprint(
        order=G.order,
        abelian=abelian,
        exponent=exponent,
        center_order=int(G.center().size),
        derived_order=int(G.derived_subgroup().size),
        order_histogram=hist,
        abelian_invariants=_abelian_invariants(orders) if abelian else None,
    )


# -- small reference groups used in tests and reports ----------------------------------


def cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def direct_product_table(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    n1, n2 = t1.shape[0], t2.shape[0]
    a = np.arange(n1 * n2)
    g1, g2 = a // n2, a % n2
    return t1[g1[:, None], g1[None, :]] * n2 + t2[g2[:, None], g2[None, :]]


def abelian_table(*ns: int) -> np.ndarray:
    t = np.zeros((1, 1), dtype=np.int64)
    for n in ns:
        t = direct_product_table(t, cyclic_table(n))
    return t


def dihedral_table(k: int) -> np.ndarray:
    """Dihedral group of order 2k: elements ``(s, r)`` meaning ``x^s y^r`` with ``y x = x y^-1``."""
    n = 2 * k
    out = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        s1, r1 = divmod(a, k)
        for b in range(n):
            s2, r2 = divmod(b, k)
            r = (r1 * (-1 if s2 else 1) + r2) % k
            out[a, b] = ((s1 + s2) % 2) * k + r
    return out


def quaternion_table() -> np.ndarray:
    """Q8 via unit quaternions ±1, ±i, ±j, ±k."""
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    index = {e: n for n, e in enumerate(elems)}
    out = np.empty((8, 8), dtype=np.int64)
    for a, (s1, u1) in enumerate(elems):
        for b, (s2, u2) in enumerate(elems):
            s, u = mult[(u1, u2)]
            out[a, b] = index[(s1 * s2 * s, u)]
    return out
