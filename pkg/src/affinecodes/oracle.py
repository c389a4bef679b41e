"""Brute-force ground truth for small lengths.

Permutation automorphisms by scanning the full symmetric group, by
enumerating translations times the semilinear group, regular subgroups of
PAut by backtracking, and centralizers of regular groups.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .code import AffineInvariantCode, dimension
from .errors import BudgetExceeded, InternalInconsistency, NotRegular, TooLarge, TrivialCode
from .finite_field import divisors, frobenius_matrix
from .groups import GroupFingerprint, fingerprint
from .semilinear import affine_group_images, gl_generators, paut_order, semilinear_group
from .structures import (
    AlphaMap,
    RegularGroup,
    build_regular_group,
    check_iyb,
    is_twosided_alpha,
    reconstruct_alpha,
    regular_group_problem,
)

Permutation = tuple[int, ...]

SCAN_LIMIT = 9
ENUMERATE_LIMIT = 16
DEFAULT_BUDGET = 10**7


def _rows_to_set(rows: np.ndarray) -> frozenset[Permutation]:
    return frozenset(tuple(int(v) for v in r) for r in rows)


def brute_paut_scan(C: AffineInvariantCode, chunk: int = 50_000) -> frozenset[Permutation]:
    """Every permutation of the n coordinates mapping C onto itself (n <= 9)."""
    n = C.length
    if n > SCAN_LIMIT:
        raise TooLarge(f"full scan of S_{n} is limited to n <= {SCAN_LIMIT}")
    kept = []
    it = itertools.permutations(range(n))
    while True:
        block = np.array(list(itertools.islice(it, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        kept.append(block[C.preserved_by(block)])
    return _rows_to_set(np.concatenate(kept))


def paut_elements(C: AffineInvariantCode) -> np.ndarray:
    """PAut(C) as rows of images: translations composed with the semilinear group."""
    if C.is_trivial:
        raise TrivialCode("PAut of a trivial code is the full symmetric group")
    if C.length > ENUMERATE_LIMIT:
        raise TooLarge(f"PAut enumeration is limited to length <= {ENUMERATE_LIMIT}")
    a, b, _ = C.params
    rows = affine_group_images(C.field, semilinear_group(C.field, a, b))
    expected = paut_order(C)
    if rows.shape[0] != expected or np.unique(rows, axis=0).shape[0] != expected:
        raise InternalInconsistency(f"enumerated {rows.shape[0]} elements, formula says {expected}")
    return rows


def enumerate_paut(C: AffineInvariantCode) -> frozenset[Permutation]:
    return _rows_to_set(paut_elements(C))


# -- regular subgroups -----------------------------------------------------------------


def _pgroup_fpf_mask(rows: np.ndarray, p: int, m: int) -> np.ndarray:
    """Rows that fix no point and have order a power of p (at most p^m)."""
    n = rows.shape[1]
    idx = np.arange(n)
    fpf = ~(rows == idx).any(axis=1)
    power = rows.copy()
    for _ in range(m):
        nxt = power.copy()
        for _ in range(p - 1):
            nxt = np.take_along_axis(power, nxt, axis=1)
        power = nxt
    return fpf & (power == idx).all(axis=1)


@dataclass
class SearchResult:
    groups: list[RegularGroup]
    nodes: int
    complete: bool = True
    fingerprints: list[GroupFingerprint] = field(default_factory=list)

    def pairs(self) -> list[tuple[RegularGroup, GroupFingerprint]]:
        return list(zip(self.groups, self.fingerprints))


def _search(elements: np.ndarray, p: int, m: int, budget: int) -> tuple[list[np.ndarray], int, bool]:
    n = elements.shape[1]
    idx = np.arange(n)
    cand = elements[_pgroup_fpf_mask(elements, p, m)]
    allowed = {r.tobytes() for r in cand}
    by_point: dict[int, list[np.ndarray]] = {x: [] for x in range(1, n)}
    for r in cand:
        by_point[int(r[0])].append(r)

    found: list[np.ndarray] = []
    nodes = 0

    def close(group: dict[int, np.ndarray], gens: list[np.ndarray]) -> dict[int, np.ndarray] | None:
        """Closure of group + gens[-1]; None if it stops being semiregular with allowed elements."""
        out = dict(group)
        frontier = list(group.values())
        new = gens[-1]
        if int(new[0]) in out:
            return None
        out[int(new[0])] = new
        frontier.append(new)
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    e = g[h]
                    k = int(e[0])
                    if k in out:
                        if not np.array_equal(out[k], e):
                            return None
                        continue
                    if k == 0 or e.tobytes() not in allowed:
                        return None
                    out[k] = e
                    nxt.append(e)
            if len(out) > n:
                return None
            frontier = nxt
        return out

    def walk(group: dict[int, np.ndarray], gens: list[np.ndarray]) -> bool:
        nonlocal nodes
        if len(group) == n:
            found.append(np.stack([group[x] for x in range(n)]))
            return True
        x = next(y for y in range(1, n) if y not in group)
        for c in by_point[x]:
            nodes += 1
            if nodes > budget:
                return False
            closed = close(group, gens + [c])
            if closed is not None and not walk(closed, gens + [c]):
                return False
        return True

    complete = walk({0: idx.copy()}, [])
    return found, nodes, complete


def regular_subgroup_search(
    C: AffineInvariantCode, budget: int = DEFAULT_BUDGET, elements: np.ndarray | None = None
) -> SearchResult:
    """All subgroups of PAut(C) acting regularly on the coordinates.

    Backtracks over fixed-point-free elements of p-power order; the next
    generator always moves 0 to the least point not yet reached, so each
    subgroup is produced exactly once.  Raises BudgetExceeded carrying the
    partial SearchResult when the node budget runs out.
    """
    if elements is None:
        elements = paut_elements(C)
    found, nodes, complete = _search(elements, C.p, C.m, budget)
    groups = [RegularGroup(perms, C.field, check=False) for perms in found]
    for G in groups:
        problem = regular_group_problem(G.perms)
        if problem:
            raise InternalInconsistency(f"search produced an invalid group: {problem}")
    result = SearchResult(groups, nodes, complete, [fingerprint(G) for G in groups])
    if not complete:
        raise BudgetExceeded(f"search stopped after {nodes} nodes with {len(groups)} groups", partial=result)
    return result


# -- centralizers ----------------------------------------------------------------------


def centralizer_of_regular(G: RegularGroup) -> RegularGroup:
    """The centralizer of G in the symmetric group: x -> (y -> g_y(x)).

    With rows indexed by image of 0 this is the transpose of G's table.
    """
    problem = regular_group_problem(G.perms)
    if problem:
        raise NotRegular(problem)
    cent = np.ascontiguousarray(G.perms.T)
    H = RegularGroup(cent, G.spec, check=False)
    if not commute_elementwise(G.perms, cent):
        raise InternalInconsistency("formula centralizer does not commute with G")
    problem = regular_group_problem(cent)
    if problem:
        raise InternalInconsistency(f"centralizer is not regular: {problem}")
    return H


def commute_elementwise(A: np.ndarray, B: np.ndarray) -> bool:
    """Every row of A commutes with every row of B as permutations."""
    for a in A:
        if not np.array_equal(a[B], np.take_along_axis(B, np.broadcast_to(a, B.shape), axis=1)):
            return False
    return True


def naive_centralizer(G: RegularGroup, pool: np.ndarray | None = None) -> np.ndarray:
    """Rows of ``pool`` (default: the whole symmetric group, n <= 8) commuting with all of G."""
    n = G.order
    if pool is None:
        if n > 8:
            raise TooLarge("naive centralizer over S_n is limited to n <= 8")
        pool = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    keep = np.ones(pool.shape[0], dtype=bool)
    for g in G.perms:
        keep &= (pool[:, g] == g[pool]).all(axis=1)
    return pool[keep]


# -- left and two-sided structures ----------------------------------------------------


@dataclass
class StructureRecord:
    group: RegularGroup
    fingerprint: GroupFingerprint
    twosided: bool
    alpha: AlphaMap
    alpha_twosided: bool


def classify_regular_subgroups(C: AffineInvariantCode, budget: int = DEFAULT_BUDGET) -> list[StructureRecord]:
    """Search, then test each group's centralizer for PAut membership and rebuild its alpha-map."""
    try:
        found = regular_subgroup_search(C, budget)
        complete = True
    except BudgetExceeded as exc:
        found, complete = exc.partial, False
    a = C.params.a
    records = []
    for G, fp in found.pairs():
        cent = centralizer_of_regular(G)
        twosided = bool(C.preserved_by(cent.perms).all())
        alpha = reconstruct_alpha(G)
        if not check_iyb(alpha):
            raise InternalInconsistency("reconstructed alpha fails the cocycle law")
        if build_regular_group(alpha) != G:
            raise InternalInconsistency("rebuilt group differs from the found subgroup")
        records.append(StructureRecord(G, fp, twosided, alpha, is_twosided_alpha(alpha, a)))
    if not complete:
        raise BudgetExceeded(
            f"search stopped after {found.nodes} nodes with {len(found.groups)} groups", partial=records
        )
    return records


def _summarize(fps: list[GroupFingerprint]) -> list[dict]:
    counts = Counter(fps)
    out = []
    for fp in sorted(counts, key=lambda f: (f.abelian is False, f.label())):
        out.append({"type": fp.label(), "count": counts[fp], "fingerprint": fp.to_dict()})
    return out


def left_and_twosided_groups(C: AffineInvariantCode, budget: int = DEFAULT_BUDGET) -> dict:
    """Fingerprints of all regular subgroups of PAut(C) and of the two-sided ones."""
    records = classify_regular_subgroups(C, budget)
    return {
        "left": _summarize([r.fingerprint for r in records]),
        "twosided": _summarize([r.fingerprint for r in records if r.twosided]),
        "subgroups": len(records),
    }


def groups_report(C: AffineInvariantCode, budget: int = DEFAULT_BUDGET) -> dict:
    """JSON-ready report: code, |PAut|, left and two-sided structure types."""
    out = {"code": C.descriptor(), "paut_order": paut_order(C)}
    try:
        out.update(left_and_twosided_groups(C, budget))
        out["complete"] = True
    except BudgetExceeded as exc:
        records = exc.partial or []
        out["left"] = _summarize([r.fingerprint for r in records])
        out["twosided"] = _summarize([r.fingerprint for r in records if r.twosided])
        out["subgroups"] = len(records)
        out["complete"] = False
    return out


def verify_code(C: AffineInvariantCode, budget: int = DEFAULT_BUDGET) -> dict:
    """Cross-check the closed-form PAut against enumeration and, for n <= 9, the full scan."""
    checks: dict[str, object] = {}
    if C.is_trivial:
        if C.length <= SCAN_LIMIT:
            scan = brute_paut_scan(C)
            checks["scan_order"] = len(scan)
            checks["scan_is_symmetric_group"] = len(scan) == math.factorial(C.length)
        return checks
    order = paut_order(C)
    checks["paut_order"] = order
    if C.length <= ENUMERATE_LIMIT:
        enum = enumerate_paut(C)
        checks["enumerated"] = len(enum)
        checks["enumerated_matches_formula"] = len(enum) == order
        if C.length <= SCAN_LIMIT:
            scan = brute_paut_scan(C)
            checks["scan_order"] = len(scan)
            checks["scan_equals_enumeration"] = scan == enum
            a_scan, b_scan = params_from_permutations(C, scan)
            checks["a_from_scan"] = a_scan
            checks["b_from_scan"] = b_scan
            checks["params_match_scan"] = (a_scan, b_scan) == tuple(C.params[:2])
    checks["dim_matches_length_minus_D"] = dimension(C) == C.length - len(C.D)
    return checks


def params_from_permutations(C: AffineInvariantCode, perms: frozenset[Permutation]) -> tuple[int, int]:
    """a and b read off a set of permutations containing PAut(C).

    a is the least divisor d of m with GL(K over GF(p^d)) inside the set, b the
    least d with the p^d-Frobenius inside it.
    """
    spec = C.field
    a = next(
        d for d in divisors(spec.m) if all(tuple(int(v) for v in g.table) in perms for g in gl_generators(spec, d))
    )
    b = next(d for d in divisors(spec.m) if tuple(int(v) for v in frobenius_matrix(spec, d).table) in perms)
    return a, b
