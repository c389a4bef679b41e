"""Affine-invariant codes of length p^m given by their defining sets.

A code is the space of words ``w: K -> F`` (one symbol of the alphabet
F = GF(p^r) per element of K = GF(p^m)) whose power sums
``sum_g w_g g^i`` vanish for every exponent ``i`` in the defining set, with
``0^0 = 1``.  Coordinates are indexed by the integer encoding of the field
elements of K, so coordinate ``g`` is the field element ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import linalg
from .additive import digit_table, to_digits
from .cyclotomic import cyclotomic_classes, is_union_of_classes, padic_weight, preceq
from .errors import AlphabetMismatch, InvalidDefiningSet, TooLarge
from .finite_field import Compositum, FieldSpec, compositum, make_field

MAX_ENUM_LENGTH = 1 << 16


# -- defining sets ------------------------------------------------------------


def is_affine_invariant(D: Iterable[int], p: int, m: int) -> bool:
    """Down-closure under the digitwise order on 1..p^m-1."""
    D = frozenset(D)
    top = p**m - 1
    for t in D:
        if not 1 <= t <= top:
            continue
        for s in range(1, t):
            if s not in D and preceq(s, t, p):
                return False
    return True


def defining_set_problems(D: Iterable[int], p: int, m: int, r: int) -> list[str]:
    """Reasons ``D`` is not the defining set of an affine-invariant code (empty if valid)."""
    D = frozenset(D)
    n = p**m - 1
    problems = []
    if any(not 0 <= x <= n for x in D):
        problems.append(f"values must lie in [0, {n}]")
        return problems
    if 0 not in D:
        problems.append("0 must belong to the defining set")
    if n >= 1 and not is_union_of_classes(D, p**r, n):
        problems.append(f"D minus {{{n}}} is not a union of {p**r}-cyclotomic classes mod {n}")
    if not is_affine_invariant(D, p, m):
        problems.append("D is not down-closed under the p-adic digit order")
    if n in D and D != frozenset(range(n + 1)):
        problems.append(f"{n} in D forces D = {{0, ..., {n}}}")
    return problems


def trivial_sets(p: int, m: int) -> tuple[frozenset[int], ...]:
    n = p**m
    return (frozenset({0}), frozenset(range(n - 1)), frozenset(range(n)))


@dataclass(frozen=True)
class DefiningSet:
    elements: tuple[int, ...]
    trivial: bool

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __str__(self) -> str:
        return ",".join(map(str, self.elements))


def _tagged(D: Iterable[int], p: int, m: int) -> DefiningSet:
    D = frozenset(D)
    return DefiningSet(tuple(sorted(D)), D in trivial_sets(p, m))


def _sort_key(ds: DefiningSet):
    return (len(ds.elements), ds.elements)


def iter_affine_invariant(p: int, m: int, r: int) -> Iterator[frozenset[int]]:
    """Generate every valid defining set once (unsorted).

    The nonzero residue classes modulo p^m - 1 are processed by increasing
    digit weight; a class may be added only when every class holding one of
    its digitwise predecessors is already in.  Multiplication by p permutes
    digits, so weight is constant on classes and strictly increases along
    the order, which makes this a plain down-set enumeration.
    """
    n = p**m - 1
    if n + 1 > MAX_ENUM_LENGTH:
        raise TooLarge(f"length {n + 1} exceeds the enumeration limit {MAX_ENUM_LENGTH}")
    if n == 1:
        # GF(2): the only classes are the exponents themselves
        yield frozenset({0})
        yield frozenset({0, 1})
        return
    classes = [c for c in cyclotomic_classes(p**r, n) if c.leader != 0]
    classes.sort(key=lambda c: (padic_weight(c.leader, p), c.leader))
    owner = {x: k for k, c in enumerate(classes) for x in c.members}
    needs: list[set[int]] = []
    for k, c in enumerate(classes):
        req = set()
        for t in c.members:
            for s in range(1, t):
                if preceq(s, t, p) and owner[s] != k:
                    req.add(owner[s])
        needs.append(req)

    chosen: list[bool] = [False] * len(classes)

    def walk(k: int) -> Iterator[frozenset[int]]:
        if k == len(classes):
            yield frozenset([0] + [x for j, c in enumerate(classes) if chosen[j] for x in c.members])
            return
        yield from walk(k + 1)
        if all(chosen[j] for j in needs[k]):
            chosen[k] = True
            yield from walk(k + 1)
            chosen[k] = False

    yield from walk(0)
    yield frozenset(range(n + 1))


def enumerate_affine_invariant(p: int, m: int, r: int) -> list[DefiningSet]:
    """All defining sets of affine-invariant codes of length p^m over GF(p^r), sorted."""
    out = [_tagged(D, p, m) for D in iter_affine_invariant(p, m, r)]
    return sorted(out, key=_sort_key)


def enumerate_affine_invariant_bruteforce(p: int, m: int, r: int) -> list[DefiningSet]:
    """Independent check of :func:`enumerate_affine_invariant` by scanning all subsets."""
    n = p**m - 1
    if n + 1 > 16:
        raise TooLarge("subset scan is limited to length 16")
    out = []
    for bits in range(1 << n):
        D = frozenset([0] + [i + 1 for i in range(n) if bits >> i & 1])
        if not defining_set_problems(D, p, m, r):
            out.append(_tagged(D, p, m))
    return sorted(out, key=_sort_key)


# -- codewords and codes ---------------------------------------------------------


@dataclass(frozen=True)
class Codeword:
    """One alphabet symbol (integer-encoded element of GF(p^r)) per element of K."""

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, g: int) -> int:
        return self.values[g]

    @classmethod
    def zero(cls, length: int) -> "Codeword":
        return cls((0,) * length)

    @classmethod
    def unit(cls, length: int, g: int) -> "Codeword":
        return cls(tuple(1 if h == g else 0 for h in range(length)))

    def permuted(self, images: Sequence[int]) -> "Codeword":
        """Word moved by the coordinate permutation g -> images[g]."""
        out = [0] * len(self.values)
        for g, v in enumerate(self.values):
            out[int(images[g])] = v
        return Codeword(tuple(out))


def _field_rref(F: FieldSpec, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(p^r) on integer-encoded entries."""
    if F.m == 1:
        if not rows:
            return [], []
        r, piv = linalg.rref(np.array(rows, dtype=np.int64), F.p)
        return [[int(v) for v in row] for row in r], piv
    a = [list(row) for row in rows]
    pivots: list[int] = []
    if not a:
        return a, pivots
    ncols = len(a[0])
    row = 0
    for col in range(ncols):
        if row == len(a):
            break
        piv = next((i for i in range(row, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = F.inv(a[row][col])
        a[row] = [F.mul(inv, v) for v in a[row]]
        for i in range(len(a)):
            if i != row and a[i][col]:
                c = a[i][col]
                a[i] = [F.sub(v, F.mul(c, w)) for v, w in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    return a, pivots


def _field_nullspace(F: FieldSpec, rows: list[list[int]], ncols: int) -> list[list[int]]:
    r, piv = _field_rref(F, rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(r[i][fc])
        basis.append(v)
    if not basis:
        return []
    red, piv2 = _field_rref(F, basis)
    return red[: len(piv2)]


class _Coordinates:
    """Coordinates of compositum elements in the alphabet-basis ``theta^j``."""

    def __init__(self, comp: Compositum):
        F, L = comp.alphabet, comp.big
        self.r = F.m
        self.s = L.m // F.m
        self.p = L.p
        theta = L.primitive
        cols = []
        for j in range(self.s):
            tj = L.pow(theta, j)
            for k in range(self.r):
                beta_k = comp.embed_alphabet(F.p**k)
                cols.append(to_digits(L.mul(beta_k, tj), L.p, L.m))
        self.binv = linalg.inverse(np.array(cols, dtype=np.int64).T, L.p)
        self.L = L

    def of(self, values: Sequence[int]) -> np.ndarray:
        """``(len(values), s)`` array of alphabet-encoded coordinates."""
        dig = digit_table(self.p, self.L.m)[np.asarray(values, dtype=np.int64)]
        c = dig @ self.binv.T % self.p  # columns ordered (j, k)
        c = c.reshape(len(values), self.s, self.r)
        return c @ (self.p ** np.arange(self.r, dtype=np.int64))


@dataclass(frozen=True)
class AffineInvariantCode:
    """Affine-invariant code over GF(p^r) of length p^m with defining set ``D``."""

    field: FieldSpec
    r: int
    D: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "D", frozenset(int(x) for x in self.D))
        if self.r < 1:
            raise InvalidDefiningSet("alphabet exponent r must be at least 1")
        problems = defining_set_problems(self.D, self.p, self.m, self.r)
        if problems:
            raise InvalidDefiningSet("; ".join(problems))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def length(self) -> int:
        return self.field.order

    @cached_property
    def alphabet(self) -> FieldSpec:
        return make_field(self.p, self.r)

    @cached_property
    def comp(self) -> Compositum:
        return compositum(self.alphabet, self.field)

    @property
    def is_trivial(self) -> bool:
        return is_trivial(self)

    def sorted_D(self) -> tuple[int, ...]:
        return tuple(sorted(self.D))

    def descriptor(self) -> dict:
        return {"p": self.p, "m": self.m, "r": self.r, "D": list(self.sorted_D())}

    # cached invariants ----------------------------------------------------

    @cached_property
    def basis(self) -> tuple[Codeword, ...]:
        return tuple(_compute_basis(self))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def params(self):
        from .semilinear import compute_params

        return compute_params(self)

    @property
    def a(self) -> int:
        return self.params.a

    @property
    def b(self) -> int:
        return self.params.b

    # F_p views used for fast permutation tests ---------------------------

    @cached_property
    def fp_words(self) -> np.ndarray:
        """F_p-spanning set of the code, shape ``(k, length, r)``."""
        F = self.alphabet
        words = []
        for w in self.basis:
            for k in range(self.r):
                scale = F.p**k
                words.append([to_digits(F.mul(scale, v), F.p, self.r) for v in w.values])
        if not words:
            return np.zeros((0, self.length, self.r), dtype=np.int64)
        return np.array(words, dtype=np.int64)

    @cached_property
    def fp_checks(self) -> np.ndarray:
        """Rows h with sum h[g, k] v[g, k] = 0 exactly on the code, shape ``(h, length, r)``."""
        n, r = self.length, self.r
        words = self.fp_words.reshape(-1, n * r)
        if words.shape[0] == 0:
            checks = np.eye(n * r, dtype=np.int64)
        else:
            checks = linalg.nullspace(words, self.p)
        return checks.reshape(-1, n, r)

    def preserved_by(self, perms) -> np.ndarray:
        """Boolean mask: which coordinate permutations (rows of images) map the code to itself."""
        perms = np.atleast_2d(np.asarray(perms, dtype=np.int64))
        H, W = self.fp_checks, self.fp_words
        if W.shape[0] == 0 or H.shape[0] == 0:
            return np.ones(perms.shape[0], dtype=bool)
        out = np.empty(perms.shape[0], dtype=bool)
        chunk = max(1, 2_000_000 // (H.shape[0] * self.length * self.r + 1))
        for start in range(0, perms.shape[0], chunk):
            S = perms[start : start + chunk]
            Hs = H[:, S, :]  # (h, N, n, r): check column at sigma(g)
            prod = np.einsum("hNgk,jgk->Nhj", Hs, W) % self.p
            out[start : start + chunk] = ~prod.reshape(len(S), -1).any(axis=1)
        return out


def make_code(p: int, m: int, r: int, D: Iterable[int], modulus: Sequence[int] | None = None) -> AffineInvariantCode:
    return AffineInvariantCode(make_field(p, m, modulus), r, frozenset(D))


def is_trivial(C: AffineInvariantCode) -> bool:
    return C.D in trivial_sets(C.p, C.m)


# -- power sums -------------------------------------------------------------------


def _power_table(C: AffineInvariantCode, exponents: Iterable[int]) -> dict[int, list[int]]:
    """For each exponent i, the compositum values emb(g)^i for every g (0^0 = 1)."""
    L, comp = C.comp.big, C.comp
    out = {}
    for i in exponents:
        row = []
        for g in range(C.length):
            eg = comp.embed_field(g)
            row.append(1 if i == 0 else L.pow(eg, i))
        out[i] = row
    return out


def _compute_basis(C: AffineInvariantCode) -> list[Codeword]:
    F = C.alphabet
    n = C.length
    coords = _Coordinates(C.comp)
    rows: list[list[int]] = []
    for i, vals in sorted(_power_table(C, C.D).items()):
        c = coords.of(vals)  # (n, s)
        for j in range(coords.s):
            rows.append([int(v) for v in c[:, j]])
    basis = _field_nullspace(F, rows, n)
    return [Codeword(tuple(v)) for v in basis]


def code_basis(C: AffineInvariantCode) -> list[Codeword]:
    """Reduced-echelon F-basis of the code (deterministic)."""
    return list(C.basis)


def dimension(C: AffineInvariantCode) -> int:
    return C.dimension


def _check_word(C_len: int, q: int, w: Codeword) -> None:
    if len(w) != C_len:
        raise AlphabetMismatch(f"word length {len(w)} != code length {C_len}")
    if any(not 0 <= v < q for v in w.values):
        raise AlphabetMismatch(f"word entries must be alphabet elements in [0, {q})")


def power_sum(C: AffineInvariantCode, w: Codeword, i: int) -> int:
    """``sum_g w_g g^i`` evaluated in the compositum (integer-encoded)."""
    L, comp = C.comp.big, C.comp
    acc = 0
    for g, a in enumerate(w.values):
        if a == 0:
            continue
        eg = comp.embed_field(g)
        gi = 1 if i == 0 else L.pow(eg, i)
        acc = L.add(acc, L.mul(comp.embed_alphabet(a), gi))
    return acc


def contains(C: AffineInvariantCode, w: Codeword) -> bool:
    _check_word(C.length, C.q, w)
    return all(power_sum(C, w, i) == 0 for i in C.D)


def compute_defining_set(basis: Sequence[Codeword], field: FieldSpec, r: int) -> frozenset[int]:
    """Exponents whose power sums vanish on every word of ``basis``.

    This does not need a valid code, only the field and alphabet; it is the
    inverse of :func:`code_basis` on valid defining sets.
    """
    alphabet = make_field(field.p, r)
    comp = compositum(alphabet, field)
    L = comp.big
    q = alphabet.order
    for w in basis:
        _check_word(field.order, q, w)
    out = set()
    for i in range(field.order):
        ok = True
        for w in basis:
            acc = 0
            for g, a in enumerate(w.values):
                if a:
                    eg = comp.embed_field(g)
                    gi = 1 if i == 0 else L.pow(eg, i)
                    acc = L.add(acc, L.mul(comp.embed_alphabet(a), gi))
            if acc:
                ok = False
                break
        if ok:
            out.add(i)
    return frozenset(out)


def all_ones(C: AffineInvariantCode) -> Codeword:
    return Codeword((1,) * C.length)


def in_span(C: AffineInvariantCode, w: Codeword) -> bool:
    """Membership decided by linear algebra on the basis (independent of power sums)."""
    _check_word(C.length, C.q, w)
    F = C.alphabet
    v = np.array([to_digits(x, F.p, C.r) for x in w.values], dtype=np.int64).reshape(1, -1)
    H = C.fp_checks.reshape(C.fp_checks.shape[0], -1)
    return not (H @ v.T % C.p).any()


def permute_word(w: Codeword, images: Sequence[int]) -> Codeword:
    return w.permuted(images)


def affine_permutation(field: FieldSpec, alpha: int, beta: int) -> list[int]:
    """Images of ``x -> alpha x + beta`` as a coordinate permutation."""
    return [field.add(field.mul(alpha, x), beta) for x in field.elements()]


__all__ = [
    "AffineInvariantCode",
    "Codeword",
    "DefiningSet",
    "affine_permutation",
    "all_ones",
    "code_basis",
    "compute_defining_set",
    "contains",
    "defining_set_problems",
    "dimension",
    "enumerate_affine_invariant",
    "enumerate_affine_invariant_bruteforce",
    "in_span",
    "is_affine_invariant",
    "is_trivial",
    "iter_affine_invariant",
    "make_code",
    "power_sum",
    "trivial_sets",
]
