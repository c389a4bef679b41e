"""Regular subgroups of the affine group built from alpha-maps, and the (chi, f) family.

An alpha-map assigns to each x in K an invertible additive map alpha(x).  When
it satisfies the cocycle law

    alpha(x + y) = alpha(alpha(y)(x)) alpha(y)

the permutations ``z -> alpha(x)^-1(z) + x`` form a group acting regularly on K.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .additive import (
    AdditiveMap,
    addition_table,
    basis_rows,
    digit_table,
    from_digits,
    negation_table,
    span,
    to_digits,
)
from .descriptors import GroupDescriptor, build_descriptor_group, cyclic, product, semidirect, vector
from .errors import (
    ChiNotLinear,
    CondViolation,
    DegenerateA,
    InternalInconsistency,
    NotACocycle,
    NotADivisor,
    NotRegular,
    TrivialCode,
)
from .finite_field import FieldSpec, mul_matrix, subfield, subfield_basis, subfield_linear_map, trace_matrix
from .groups import GroupFingerprint, fingerprint
from .semilinear import AffineElement, is_d_linear


# -- alpha-maps ----------------------------------------------------------------------


class AlphaMap:
    """A dense table ``x -> alpha(x)`` of invertible additive maps of K = GF(p^m)."""

    def __init__(self, spec: FieldSpec, values: Sequence[AdditiveMap]):
        values = list(values)
        if len(values) != spec.order:
            raise ValueError(f"alpha needs {spec.order} values, got {len(values)}")
        for v in values:
            if v.p != spec.p or v.m != spec.m:
                raise ValueError("alpha values must be additive maps of K")
        self.spec = spec
        self.values = values

    @classmethod
    def trivial(cls, spec: FieldSpec) -> "AlphaMap":
        one = AdditiveMap.identity(spec.m, spec.p)
        return cls(spec, [one] * spec.order)

    @classmethod
    def from_inverses(cls, spec: FieldSpec, lambdas: Sequence[AdditiveMap]) -> "AlphaMap":
        out = cls(spec, [lam.inverse() for lam in lambdas])
        out.__dict__["inverses"] = list(lambdas)
        return out

    def __call__(self, x: int) -> AdditiveMap:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    @cached_property
    def inverses(self) -> list[AdditiveMap]:
        """lambda(x) = alpha(x)^-1; raises ValueError if some value is singular."""
        cache: dict = {}
        out = []
        for v in self.values:
            if v.key not in cache:
                cache[v.key] = v.inverse()
            out.append(cache[v.key])
        return out

    @cached_property
    def tables(self) -> np.ndarray:
        """Row x is the image table of alpha(x)."""
        return np.stack([v.table for v in self.values])

    @cached_property
    def inverse_tables(self) -> np.ndarray:
        return np.stack([v.table for v in self.inverses])

    def is_trivial(self) -> bool:
        return all(v.is_identity() for v in self.values)

    def distinct_values(self) -> list[AdditiveMap]:
        return list({v.key: v for v in self.values}.values())


def check_iyb(alpha: AlphaMap) -> bool:
    """Exhaustively test ``alpha(x + y) == alpha(alpha(y)(x)) alpha(y)`` on all pairs."""
    spec = alpha.spec
    A = alpha.tables
    add = addition_table(spec.p, spec.m)
    for y in range(spec.order):
        lhs = A[add[:, y]]  # row x: alpha(x + y)
        moved = A[y]  # alpha(y)(x) for every x
        rhs = A[moved][:, A[y]]  # row x: alpha(alpha(y)(x)) after alpha(y)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def first_iyb_violation(alpha: AlphaMap) -> tuple[int, int] | None:
    spec = alpha.spec
    A = alpha.tables
    add = addition_table(spec.p, spec.m)
    for y in range(spec.order):
        rhs = A[A[y]][:, A[y]]
        bad = np.nonzero((A[add[:, y]] != rhs).any(axis=1))[0]
        if bad.size:
            return int(bad[0]), y
    return None


# -- regular groups ------------------------------------------------------------------


class RegularGroup:
    """A group of permutations of K acting regularly.

    ``perms[x]`` is the unique element sending 0 to x, so the rows are
    indexed by K and ``perms[g, h]`` is the index of the product ``g h``
    (composition, h applied first).  The array doubles as a multiplication
    table.
    """

    def __init__(self, perms: np.ndarray, spec: FieldSpec, alpha: AlphaMap | None = None, check: bool = True):
        perms = np.asarray(perms, dtype=np.int64)
        self.perms = perms
        self.spec = spec
        self.alpha = alpha
        if check:
            problem = regular_group_problem(perms)
            if problem:
                raise NotRegular(problem)

    @classmethod
    def from_permutations(cls, perms, spec: FieldSpec, check: bool = True) -> "RegularGroup":
        """Accept the permutations in any order; rows are re-indexed by the image of 0."""
        perms = np.asarray(perms, dtype=np.int64)
        order = np.argsort(perms[:, 0], kind="stable")
        return cls(perms[order], spec, check=check)

    @property
    def table(self) -> np.ndarray:
        return self.perms

    @property
    def order(self) -> int:
        return self.perms.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, RegularGroup) and np.array_equal(self.perms, other.perms)

    def __hash__(self) -> int:
        return hash(self.perms.tobytes())

    def key(self) -> bytes:
        return self.perms.tobytes()

    def is_abelian(self) -> bool:
        return bool((self.perms == self.perms.T).all())

    def center_points(self) -> list[int]:
        """Images of 0 of the central elements."""
        T = self.perms
        return [int(x) for x in np.nonzero((T == T.T).all(axis=1))[0]]

    def element_order(self, x: int) -> int:
        k, cur = 1, x
        while cur != 0:
            cur = int(self.perms[x, cur])
            k += 1
        return k

    def fingerprint(self) -> GroupFingerprint:
        return fingerprint(self.perms)

    def affine_element(self, x: int) -> AffineElement:
        lam = self.linear_parts()[x]
        if lam is None:
            raise ValueError(f"element {x} is not affine")
        return AffineElement(x, lam)

    def linear_parts(self) -> list[AdditiveMap | None]:
        """lambda(x): z -> perms[x, z] - x, or None where that is not additive."""
        spec = self.spec
        neg = negation_table(spec.p, spec.m)
        add = addition_table(spec.p, spec.m)
        out = []
        for x in range(self.order):
            lin = add[self.perms[x], neg[x]]
            f = AdditiveMap.from_function(lambda z: int(lin[z]), spec.p, spec.m)
            out.append(f if np.array_equal(f.table, lin) else None)
        return out


def regular_group_problem(perms: np.ndarray) -> str | None:
    """Why ``perms`` (rows indexed by image of 0) is not a regular permutation group, or None."""
    n = perms.shape[0]
    if perms.shape != (n, n):
        return f"expected a square array, got shape {perms.shape}"
    idx = np.arange(n)
    if not np.array_equal(np.sort(perms, axis=1), np.broadcast_to(idx, (n, n))):
        return "rows are not permutations"
    if not np.array_equal(perms[:, 0], idx):
        return "row x must send 0 to x (not transitive or mis-indexed)"
    if not np.array_equal(perms[0], idx):
        return "row 0 is not the identity"
    if n > 1 and (perms[1:] == idx[None, :]).any():
        return "a non-identity element fixes a point"
    step = max(1, (1 << 22) // (n * n))
    for g0 in range(0, n, step):
        g = slice(g0, g0 + step)
        composed = perms[g][:, perms]  # [g, h, k] = g(h(k))
        if not np.array_equal(composed, perms[perms[g]]):
            return "not closed under composition"
    return None


def build_regular_group(alpha: AlphaMap) -> RegularGroup:
    """The group ``{z -> alpha(x)^-1(z) + x : x in K}``, verified regular and closed."""
    if not check_iyb(alpha):
        bad = first_iyb_violation(alpha)
        raise NotACocycle(f"cocycle law fails at (x, y) = {bad}")
    spec = alpha.spec
    add = addition_table(spec.p, spec.m)
    try:
        L = alpha.inverse_tables
    except ValueError as exc:
        raise NotACocycle(f"alpha takes a singular value: {exc}") from exc
    perms = add[L, np.arange(spec.order)[:, None]]
    problem = regular_group_problem(perms)
    if problem:
        raise InternalInconsistency(f"cocycle law holds but group check failed: {problem}")
    return RegularGroup(perms, spec, alpha=alpha, check=False)


def reconstruct_alpha(G: RegularGroup) -> AlphaMap:
    """Recover alpha from a regular subgroup of the affine group via its projection to K."""
    lams = G.linear_parts()
    bad = [x for x, lam in enumerate(lams) if lam is None or not lam.is_invertible]
    if bad:
        raise ValueError(f"element sending 0 to {bad[0]} is not an affine map")
    return AlphaMap.from_inverses(G.spec, lams)


def _beta_tables(alpha: AlphaMap) -> np.ndarray:
    """``B[x, y] = alpha(x)^-1(y) - y``."""
    spec = alpha.spec
    neg = negation_table(spec.p, spec.m)
    add = addition_table(spec.p, spec.m)
    return add[alpha.inverse_tables, neg[None, :]]


def is_twosided_alpha(alpha: AlphaMap, a: int) -> bool:
    """Every alpha(x) is GF(p^a)-linear and beta(x, y) = alpha(x)^-1(y) - y is GF(p^a)-bilinear."""
    spec = alpha.spec
    if a < 1 or spec.m % a:
        raise NotADivisor(f"{a} does not divide m = {spec.m}")
    if not check_iyb(alpha):
        raise NotACocycle("alpha fails the cocycle law")
    if not all(is_d_linear(spec, v, a) for v in alpha.distinct_values()):
        return False
    B = _beta_tables(alpha)
    add = addition_table(spec.p, spec.m)
    gamma = mul_matrix(spec, spec.subfield_generator(a)).table
    # additivity in x and in y
    for x1 in range(spec.order):
        if not np.array_equal(B[add[x1]], add[B[x1][None, :], B]):
            return False
        if not np.array_equal(B[:, add[x1]], add[B[:, x1][:, None], B]):
            return False
    # scalar compatibility in both arguments
    scaled = gamma[B]
    if not np.array_equal(B[gamma], scaled) or not np.array_equal(B[:, gamma], scaled):
        return False
    return True


def centralizer_alpha(alpha: AlphaMap) -> AlphaMap:
    """alpha' with ``I_alpha'`` the centralizer: lambda'(x)(y) = y + lambda(y)(x) - x."""
    spec = alpha.spec
    add = addition_table(spec.p, spec.m)
    neg = negation_table(spec.p, spec.m)
    L = alpha.inverse_tables
    idx = np.arange(spec.order)
    lams = []
    for x in range(spec.order):
        col = add[add[idx, L[:, x]], neg[x]]
        lam = AdditiveMap.from_function(lambda y: int(col[y]), spec.p, spec.m)
        if not np.array_equal(lam.table, col):
            raise NotACocycle("centralizer element is not affine")
        lams.append(lam)
    return AlphaMap.from_inverses(spec, lams)


def cocycle_identity_holds(alpha: AlphaMap) -> bool:
    """pi(g h) = pi(g) + g . pi(h) for the projection pi(x, lambda(x)) = x.

    g acts on K by conjugating translations inside the affine group; products
    and conjugates are formed as explicit affine maps.
    """
    spec = alpha.spec
    elems = [AffineElement(x, lam) for x, lam in enumerate(alpha.inverses)]
    index = {e: x for x, e in enumerate(elems)}
    for g in elems:
        g_inv = g.inverse()
        for h in elems:
            gh = g * h
            if gh not in index:
                return False
            # conjugate the translation by pi(h) = h.translation
            t = g * AffineElement.translation_by(h.translation, spec.p, spec.m) * g_inv
            if not t.part.is_identity():
                return False
            if index[gh] != spec.add(g.translation, t.translation):
                return False
    return True


def lambda_plus_holds(alpha: AlphaMap) -> bool:
    """lambda(x1 + x2) + 1 == lambda(x1) + lambda(x2) as additive maps, for all pairs."""
    spec = alpha.spec
    mats = np.stack([lam.matrix for lam in alpha.inverses])
    add = addition_table(spec.p, spec.m)
    eye = np.eye(spec.m, dtype=np.int64)
    for x1 in range(spec.order):
        lhs = (mats[add[x1]] + eye) % spec.p
        rhs = (mats[x1][None] + mats) % spec.p
        if not np.array_equal(lhs, rhs):
            return False
    return True


# -- the (chi, f) family --------------------------------------------------------------


def _span_rows(vectors: Sequence[int], p: int, m: int) -> np.ndarray:
    rows = basis_rows(vectors, p, m)
    return linalg.row_basis(rows, p) if rows.size else rows.reshape(0, m)


def _ints(rows: np.ndarray, p: int) -> list[int]:
    return [from_digits(r, p) for r in rows]


@dataclass(frozen=True, eq=False)
class ChiF:
    """An admissible pair: chi additive K -> GF(p^a), f GF(p^a)-linear, f^2 = 0, chi f = 0."""

    spec: FieldSpec
    chi: AdditiveMap
    f: AdditiveMap
    a: int

    @cached_property
    def alpha(self) -> AlphaMap:
        spec = self.spec
        cache: dict[int, AdditiveMap] = {}
        one = AdditiveMap.identity(spec.m, spec.p)
        vals = []
        for x in range(spec.order):
            c = self.chi(x)
            if c not in cache:
                cache[c] = one + mul_matrix(spec, c) @ self.f
            vals.append(cache[c])
        neg_cache = {c: one - mul_matrix(spec, c) @ self.f for c in cache}
        out = AlphaMap(spec, vals)
        out.__dict__["inverses"] = [neg_cache[self.chi(x)] for x in range(spec.order)]
        return out

    @cached_property
    def group(self) -> RegularGroup:
        return build_regular_group(self.alpha)

    @property
    def chi_is_linear(self) -> bool:
        return is_d_linear(self.spec, self.chi, self.a)

    @property
    def rank(self) -> int:
        """Rank of f over GF(p^a)."""
        return self.f.rank() // self.a

    def kernel_chi(self) -> list[int]:
        return self.chi.kernel_basis()

    def kernel_f(self) -> list[int]:
        return self.f.kernel_basis()

    def kernel_relation(self) -> str:
        """One of 'equal', 'kerf-not-in-kerchi', 'kerf-proper-in-kerchi', 'kerchi-proper-in-kerf'."""
        p = self.spec.p
        kc = basis_rows(self.kernel_chi(), p, self.spec.m)
        kf = basis_rows(self.kernel_f(), p, self.spec.m)
        f_in_c = all(linalg.in_span(v, kc, p) for v in kf)
        c_in_f = all(linalg.in_span(v, kf, p) for v in kc)
        if f_in_c and c_in_f:
            return "equal"
        if not f_in_c:
            return "kerf-not-in-kerchi"
        return "kerf-proper-in-kerchi"

    def to_dict(self) -> dict:
        return {"a": self.a, "chi": self.chi.to_rows(), "f": self.f.to_rows()}


def make_chi_f(spec: FieldSpec, chi: AdditiveMap, f: AdditiveMap, a: int) -> ChiF:
    """Validate the admissibility clauses and build the pair; the cocycle law is re-checked."""
    if a < 1 or spec.m % a:
        raise NotADivisor(f"{a} does not divide m = {spec.m}")
    if a == spec.m:
        raise DegenerateA("no admissible pair exists when a = m")
    for name, g in (("chi", chi), ("f", f)):
        if g.p != spec.p or g.m != spec.m:
            raise ValueError(f"{name} must be an additive map of K")
    sub = subfield(spec, a)
    if not all(sub.contains(int(v)) for v in chi.table):
        raise CondViolation("chi-range", f"chi must take values in GF({spec.p}^{a})")
    if chi.is_zero():
        raise CondViolation("chi!=0")
    if f.is_zero():
        raise CondViolation("f!=0")
    if not is_d_linear(spec, f, a):
        raise CondViolation("f-linear", f"f must be GF({spec.p}^{a})-linear")
    if not (f @ f).is_zero():
        raise CondViolation("f^2=0")
    if not (chi @ f).is_zero():
        raise CondViolation("chi∘f=0")
    cf = ChiF(spec, chi, f, a)
    if not check_iyb(cf.alpha):
        raise InternalInconsistency("alpha_{chi,f} fails the cocycle law")
    return cf


@dataclass(frozen=True)
class ChiFClass:
    abelian: bool
    center: tuple[int, ...]  # sorted points z with (z, 1) central
    exponent: int


def classify_chi_f(cf: ChiF) -> ChiFClass:
    """Abelian flag, center and exponent from the kernels, re-checked on the concrete group."""
    spec = cf.spec
    p = spec.p
    kc = basis_rows(cf.kernel_chi(), p, spec.m)
    kf = basis_rows(cf.kernel_f(), p, spec.m)
    kc_in_kf = all(linalg.in_span(v, kf, p) for v in kc)
    abelian = cf.chi_is_linear and kc_in_kf
    if abelian:
        center = tuple(range(spec.order))
    else:
        common = linalg.intersect(kc, kf, p) if kc.size and kf.size else np.zeros((0, spec.m), dtype=np.int64)
        center = tuple(sorted(span(_ints(common, p), p, spec.m)))
    exponent = p if p % 2 else 4
    out = ChiFClass(abelian, center, exponent)

    G = cf.group
    if G.is_abelian() != abelian:
        raise InternalInconsistency("abelian flag disagrees with the group table")
    if tuple(G.center_points()) != center:
        raise InternalInconsistency("center disagrees with the group table")
    if fingerprint(G).exponent != exponent:
        raise InternalInconsistency("exponent disagrees with the group table")
    return out


@dataclass
class Decomposition:
    """Subspace bases (integer-encoded) and maps from the structure theorem for I_{chi,f}."""

    Z: list[int]
    V: list[int]
    W: list[int]
    Wp: list[int]
    U: list[int]
    g: AdditiveMap
    mu_values: dict[int, int]  # v -> chi(g(v)) on V
    iso: list[tuple[int, int, int, int]]  # x -> (z, v, w, c)
    target_table: np.ndarray

    @property
    def dims(self) -> tuple[int, int, int, int, int]:
        return (len(self.Z), len(self.V), len(self.W), len(self.Wp), len(self.U))


def _preimage(f: AdditiveMap, target: int, domain_basis: Sequence[int]) -> int | None:
    """Some x in span(domain_basis) with f(x) = target."""
    p, m = f.p, f.m
    if not domain_basis:
        return 0 if target == 0 else None
    cols = np.array([to_digits(f(b), p, m) for b in domain_basis], dtype=np.int64).T
    c = linalg.solve(cols, to_digits(target, p, m), p)
    if c is None:
        return None
    vec = c @ basis_rows(domain_basis, p, m) % p
    return from_digits(vec, p)


def decompose_chi_f(cf: ChiF) -> Decomposition:
    """Split K = Z + V + W + W' + U and verify the explicit isomorphism onto Z x (V_mu x| chi(U))."""
    spec = cf.spec
    p, m = spec.p, spec.m
    f, chi = cf.f, cf.chi
    kc = basis_rows(cf.kernel_chi(), p, m)
    kf = basis_rows(cf.kernel_f(), p, m)
    N = linalg.intersect(kc, kf, p)
    V_rows = _span_rows(f.image_basis(), p, m)
    Z_rows = linalg.complement(V_rows, N, p)
    U_rows = linalg.complement(N, kf, p)

    kc_ints = _ints(kc, p)
    fk_rows = _span_rows([f(x) for x in kc_ints], p, m)
    H_rows = linalg.complement(fk_rows, V_rows, p)
    all_ints = [p**j for j in range(m)]
    W = [_preimage(f, v, kc_ints) for v in _ints(fk_rows, p)]
    Wp = [_preimage(f, h, all_ints) for h in _ints(H_rows, p)]
    if any(x is None for x in W + Wp):
        raise InternalInconsistency("could not find preimages under f")
    V = _ints(V_rows, p)
    v_basis = _ints(fk_rows, p) + _ints(H_rows, p)
    g_images = W + Wp
    # g on V, extended by zero on a complement of V so that it is a map of K
    ext = _ints(linalg.complement(V_rows, np.eye(m, dtype=np.int64), p), p)
    g = AdditiveMap.from_basis_images(v_basis + ext, g_images + [0] * len(ext), p, m)
    if any(f(g(v)) != v for v in v_basis):
        raise InternalInconsistency("f g is not the identity on V")
    if any(chi(g(v)) != 0 for v in _ints(fk_rows, p)):
        raise InternalInconsistency("g f(ker chi) is not inside ker chi")

    Z, U = _ints(Z_rows, p), _ints(U_rows, p)
    parts = [Z, V, W, Wp, U]
    combined = Z + V + W + Wp + U
    if len(combined) != m or linalg.rank(basis_rows(combined, p, m), p) != m:
        raise InternalInconsistency("subspaces do not form a direct sum decomposition of K")

    # coordinates of every x in the combined basis
    Bmat = basis_rows(combined, p, m).T
    Binv = linalg.inverse(Bmat, p)
    digits = digit_table(p, m)
    coords = digits @ Binv.T % p  # row x: coefficients of x
    bounds = np.cumsum([0] + [len(s) for s in parts])
    comp = []
    for i, basis in enumerate(parts):
        if basis:
            sub = coords[:, bounds[i] : bounds[i + 1]] @ basis_rows(basis, p, m) % p
            comp.append(sub @ (p ** np.arange(m, dtype=np.int64)))
        else:
            comp.append(np.zeros(spec.order, dtype=np.int64))
    z_of, v_of, w_of, wp_of, u_of = comp

    add = addition_table(p, m)
    iso = []
    for x in range(spec.order):
        iso.append(
            (
                int(z_of[x]),
                int(v_of[x]),
                int(f(int(add[w_of[x], wp_of[x]]))),
                int(chi(int(u_of[x]))),
            )
        )
    if len(set(iso)) != spec.order:
        raise InternalInconsistency("decomposition map is not injective")
    mu = {v: int(chi(g(v))) for v in sorted(set(int(t[1]) for t in iso) | set(int(t[2]) for t in iso))}

    def target_mul(s, t):
        z1, v1, w1, c1 = s
        z2, v2, w2, c2 = t
        shift = spec.add(spec.mul(c1, w2), spec.mul(mu[w1], w2))
        return (spec.add(z1, z2), spec.sub(spec.add(v1, v2), shift), spec.add(w1, w2), spec.add(c1, c2))

    index = {t: x for x, t in enumerate(iso)}
    T = cf.group.perms
    target = np.empty_like(T)
    for x1 in range(spec.order):
        for x2 in range(spec.order):
            prod = target_mul(iso[x1], iso[x2])
            y = index.get(prod)
            if y is None:
                raise InternalInconsistency("target product leaves the image of the decomposition map")
            target[x1, x2] = y
    if not np.array_equal(target, T):
        raise InternalInconsistency("decomposition map is not a homomorphism")
    return Decomposition(Z, V, W, Wp, U, g, mu, iso, target)


def estr_case(cf: ChiF) -> str:
    """Which of the four structure cases (a)-(d) applies; chi must be GF(p^a)-linear."""
    if not cf.chi_is_linear:
        raise ChiNotLinear(f"chi is not GF({cf.spec.p}^{cf.a})-linear")
    rel = cf.kernel_relation()
    if rel == "equal":
        return "a" if cf.spec.p % 2 else "b"
    if rel == "kerf-not-in-kerchi":
        return "c"
    return "d"


def _product_nontrivial(*parts: dict) -> dict:
    kept = [x for x in parts if not ("vector" in x and x["vector"]["dim"] == 0)]
    return kept[0] if len(kept) == 1 else product(*kept)


def estr_descriptor(cf: ChiF, verify: bool = True) -> GroupDescriptor:
    """Symbolic isomorphism type of I_{chi,f}; with ``verify`` the fingerprints are compared."""
    case = estr_case(cf)
    spec, a = cf.spec, cf.a
    p, m = spec.p, spec.m
    q = p**a
    n = m // a
    u = cf.rank
    if case == "a":
        tree = vector(p, m)
    elif case == "b":
        tree = cyclic(*([2] * (m - 2 * a) + [4] * a))
    elif case == "c":
        tree = _product_nontrivial(vector(q, n - 2 * u - 1), semidirect(q, u, "F"))
    else:
        tree = _product_nontrivial(vector(q, n - 2 * u), semidirect(q, u - 1, "Fa"))
    desc = GroupDescriptor.from_tree(tree)
    if verify:
        built = build_descriptor_group(desc)
        if fingerprint(built) != fingerprint(cf.group):
            raise InternalInconsistency(
                f"case ({case}) descriptor {desc.render()} does not match the concrete group"
            )
    return desc


# -- witnesses -------------------------------------------------------------------------


def _kernel_layout(spec: FieldSpec, chi: AdditiveMap, a: int) -> tuple[list[int], int]:
    """A GF(p^a)-basis of ker chi and one vector outside it."""
    kc = chi.kernel_basis()
    kbasis = subfield_basis(spec, a, kc)
    full = subfield_basis(spec, a, kbasis + [spec.p**j for j in range(spec.m)])
    outside = [x for x in full if x not in kbasis]
    return kbasis, outside[0]


def witness_f(spec: FieldSpec, chi: AdditiveMap, a: int, u: int, kind: str) -> AdditiveMap:
    """The GF(p^a)-linear partner f for chi from the standard construction.

    ``kind="f1"`` maps a u-dimensional W1 inside ker chi onto V and kills the
    rest (ker f contains a vector outside ker chi).  ``kind="f2"`` maps W2 and
    the line outside ker chi onto V with kernel Z2 + V.  Both need
    ``2u <= m/a - 1``.
    """
    if not is_d_linear(spec, chi, a):
        raise ChiNotLinear("witness construction expects a GF(p^a)-linear chi")
    n = spec.m // a
    if u < 1 or 2 * u > n - 1:
        raise ValueError(f"need 1 <= u and 2u <= m/a - 1 = {n - 1}, got u = {u}")
    kb, x0 = _kernel_layout(spec, chi, a)
    V, rest = kb[:u], kb[u:]
    if kind == "f1":
        images = {w: v for w, v in zip(rest[:u], V)}
    elif kind == "f2":
        images = {w: v for w, v in zip(rest[: u - 1], V[: u - 1])}
        images[x0] = V[u - 1]
    else:
        raise ValueError(f"kind must be 'f1' or 'f2', got {kind!r}")
    basis = kb + [x0]
    return subfield_linear_map(spec, a, basis, [images.get(b, 0) for b in basis])


def abelian_partner(spec: FieldSpec, chi: AdditiveMap, a: int) -> AdditiveMap:
    """f with ker f = ker chi and f(x0) a nonzero vector of ker chi."""
    kb, x0 = _kernel_layout(spec, chi, a)
    if not kb:
        raise DegenerateA("ker chi is zero; no partner exists")
    basis = kb + [x0]
    return subfield_linear_map(spec, a, basis, [0] * len(kb) + [kb[0]])


def nonabelian_exists(C) -> bool:
    """True iff the code carries a two-sided non-abelian group structure (2 a(C) < m)."""
    if C.is_trivial:
        raise TrivialCode("group structures are only classified for non-trivial codes")
    return 2 * C.params.a < C.m


@dataclass
class Witness:
    chi_f: ChiF
    case: str
    descriptor: GroupDescriptor
    group: RegularGroup


def nonabelian_witness(C, u: int = 1, kind: str = "f1") -> Witness | None:
    """A non-abelian I_{chi,f} for C with chi the trace onto GF(p^a), or None if 2a >= m."""
    if not nonabelian_exists(C):
        return None
    spec = C.field
    a = C.params.a
    chi = trace_matrix(spec, a)
    f = witness_f(spec, chi, a, u, kind)
    cf = make_chi_f(spec, chi, f, a)
    desc = estr_descriptor(cf)
    G = cf.group
    if G.is_abelian():
        raise InternalInconsistency("witness group turned out abelian")
    return Witness(cf, estr_case(cf), desc, G)


def admissible_partners(spec: FieldSpec, a: int, ranks: Sequence[int] | None = None) -> list[AdditiveMap]:
    """Every nonzero GF(p^a)-linear f with f^2 = 0, optionally restricted to GF(p^a)-ranks.

    Exhaustive over all (p^m)^(m/a) choices of basis images, vectorized; meant
    for K of order at most 16.
    """
    if a < 1 or spec.m % a:
        raise NotADivisor(f"{a} does not divide m = {spec.m}")
    p, m = spec.p, spec.m
    n = m // a
    if spec.order**n > 1 << 20:
        raise ValueError("too many GF(p^a)-linear maps to enumerate")
    basis = subfield_basis(spec, a)
    # the matrix of f depends linearly on the digits of the basis images
    units = []
    for i in range(n):
        for j in range(m):
            images = [0] * n
            images[i] = p**j
            units.append(subfield_linear_map(spec, a, basis, images).matrix)
    units = np.stack(units)  # (n m, m, m)
    coeffs = digit_table(p, n * m)  # every digit vector of length n m
    mats = np.tensordot(coeffs, units, axes=1) % p
    square = np.einsum("kij,kjl->kil", mats, mats) % p
    keep = ~square.any(axis=(1, 2)) & mats.any(axis=(1, 2))
    out = []
    for mat in mats[keep]:
        f = AdditiveMap(mat, p)
        if ranks is None or f.rank() // a in ranks:
            out.append(f)
    return out


def enumerate_chi_f(spec: FieldSpec, a: int, ranks: Sequence[int] | None = None, chis=None):
    """Every admissible (chi, f) with chi among ``chis`` (default x -> Tr(c x), c != 0)."""
    if chis is None:
        chis = [trace_matrix(spec, a, c) for c in range(1, spec.order)]
    partners = admissible_partners(spec, a, ranks)
    for chi in chis:
        if chi.is_zero():
            continue
        for f in partners:
            if (chi @ f).is_zero():
                yield make_chi_f(spec, chi, f, a)


__all__ = [
    "AlphaMap",
    "ChiF",
    "ChiFClass",
    "Decomposition",
    "RegularGroup",
    "Witness",
    "abelian_partner",
    "admissible_partners",
    "build_regular_group",
    "centralizer_alpha",
    "check_iyb",
    "classify_chi_f",
    "cocycle_identity_holds",
    "decompose_chi_f",
    "enumerate_chi_f",
    "estr_case",
    "estr_descriptor",
    "is_twosided_alpha",
    "lambda_plus_holds",
    "make_chi_f",
    "nonabelian_exists",
    "nonabelian_witness",
    "reconstruct_alpha",
    "witness_f",
]
