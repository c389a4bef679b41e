"""Semilinear maps of K = GF(p^m), the groups G_{a,b}, and PAut of affine-invariant codes.

``G_{a,b}`` is the group of invertible GF(p^b)-linear maps of K that are
tau-semilinear for some tau in Gal(GF(p^a)/GF(p^b)); PAut of a nontrivial
affine-invariant code is the translations extended by ``G_{a(C), b(C)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import linalg
from .additive import AdditiveMap, digit_table, from_digits, vec_add, vec_neg, vec_sub
from .code import AffineInvariantCode
from .cyclotomic import minimal_b
from .errors import (
    InternalInconsistency,
    NotADivisor,
    NotAPGroup,
    NotSemilinear,
    SingularMap,
    TrivialCode,
)
from .finite_field import (
    FieldSpec,
    divisors,
    frobenius_matrix,
    mul_matrix,
    subfield,
    subfield_basis,
    subfield_linear_map,
)


def _check_divisor(spec: FieldSpec, d: int) -> None:
    if d < 1 or spec.m % d:
        raise NotADivisor(f"{d} does not divide m = {spec.m}")


# -- linearity and semilinearity ---------------------------------------------


def is_d_linear(spec: FieldSpec, f: AdditiveMap, d: int) -> bool:
    """True iff ``f`` commutes with multiplication by a generator of GF(p^d)*."""
    _check_divisor(spec, d)
    g = mul_matrix(spec, spec.subfield_generator(d))
    return (f @ g) == (g @ f)


def semilinear_tag(spec: FieldSpec, f: AdditiveMap, a: int, b: int) -> int | None:
    """The ``j`` (mod a/b) with ``f`` semilinear for ``Frob^(b j)`` on GF(p^a), or None.

    ``f(gamma x) = gamma^(p^(b j)) f(x)`` is tested for a generator gamma of
    GF(p^a)* on the power basis, which suffices by additivity.  The kernel of
    this tag is GF(p^a)-linearity.
    """
    _check_divisor(spec, a)
    if a % b:
        raise NotADivisor(f"{b} does not divide {a}")
    if not f.is_invertible:
        raise SingularMap("semilinear tags are defined for invertible maps only")
    gamma = spec.subfield_generator(a)
    lhs = f @ mul_matrix(spec, gamma)
    for j in range(a // b):
        tau_gamma = spec.frobenius(gamma, b * j)
        if lhs == mul_matrix(spec, tau_gamma) @ f:
            return j
    return None


@dataclass(frozen=True)
class SemilinearElement:
    """A member of G_{a,b}: an invertible map together with its Galois tag."""

    map: AdditiveMap
    tau_exp: int
    a: int
    b: int

    def __matmul__(self, other: "SemilinearElement") -> "SemilinearElement":
        n = self.a // self.b
        return SemilinearElement(self.map @ other.map, (self.tau_exp + other.tau_exp) % n, self.a, self.b)

    def inverse(self) -> "SemilinearElement":
        n = self.a // self.b
        return SemilinearElement(self.map.inverse(), (-self.tau_exp) % n, self.a, self.b)

    def __call__(self, x: int) -> int:
        return self.map(x)


def make_semilinear(spec: FieldSpec, f: AdditiveMap, a: int, b: int) -> SemilinearElement:
    """Validate membership of ``f`` in G_{a,b} and record its tag."""
    tag = semilinear_tag(spec, f, a, b)
    if tag is None:
        raise NotSemilinear(f"map is not semilinear for any automorphism of GF(p^{a}) over GF(p^{b})")
    return SemilinearElement(f, tag, a, b)


# -- affine elements ---------------------------------------------------------------


@dataclass(frozen=True)
class AffineElement:
    """The permutation ``x -> part(x) + translation`` of K.

    Products follow function composition: ``(s * t)(x) = s(t(x))``, i.e.
    ``(n1, g1)(n2, g2) = (n1 + g1(n2), g1 g2)``.
    """

    translation: int
    part: AdditiveMap
    tau: int | None = None

    @property
    def p(self) -> int:
        return self.part.p

    @property
    def m(self) -> int:
        return self.part.m

    def __call__(self, x: int) -> int:
        return vec_add(self.part(x), self.translation, self.p, self.m)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        t = vec_add(self.translation, self.part(other.translation), self.p, self.m)
        return AffineElement(t, self.part @ other.part)

    def inverse(self) -> "AffineElement":
        inv = self.part.inverse()
        return AffineElement(vec_neg(inv(self.translation), self.p, self.m), inv)

    def images(self) -> np.ndarray:
        t = self.part.table
        if self.translation == 0:
            return np.array(t, dtype=np.int64)
        d = digit_table(self.p, self.m)
        s = (d[t] + d[self.translation]) % self.p
        return s @ (self.p ** np.arange(self.m, dtype=np.int64))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineElement)
            and self.translation == other.translation
            and self.part == other.part
        )

    def __hash__(self) -> int:
        return hash((self.translation, self.part))

    @classmethod
    def translation_by(cls, y: int, p: int, m: int) -> "AffineElement":
        return cls(y, AdditiveMap.identity(m, p))


def commute_criterion(e1: AffineElement, e2: AffineElement) -> bool:
    """``x + f(y) = y + g(x)`` and ``fg = gf`` for ``e1 = (x, f)``, ``e2 = (y, g)``."""
    x, f = e1.translation, e1.part
    y, g = e2.translation, e2.part
    p, m = e1.p, e1.m
    return vec_add(x, f(y), p, m) == vec_add(y, g(x), p, m) and (f @ g) == (g @ f)


# -- generators and closures -----------------------------------------------------


def gl_generators(spec: FieldSpec, d: int) -> list[AdditiveMap]:
    """Generators of GL(K over GF(p^d)) as F_p-matrices of K.

    For m/d = 1 this is multiplication by the primitive element.  Otherwise,
    in the GF(p^d)-basis ``1, xi, ..., xi^(n-1)`` (xi primitive): the basis
    n-cycle, the transvection ``e_1 -> e_1``, ``e_2 -> e_2 + e_1``, and
    ``diag(omega, 1, ..., 1)`` with omega generating GF(p^d)*.
    """
    _check_divisor(spec, d)
    n = spec.m // d
    if n == 1:
        return [mul_matrix(spec, spec.primitive)]
    xi = spec.primitive
    basis = [spec.pow(xi, j) for j in range(n)]
    omega = spec.subfield_generator(d)
    cycle = basis[1:] + basis[:1]
    transvection = [basis[0], spec.add(basis[1], basis[0])] + basis[2:]
    diag = [spec.mul(omega, basis[0])] + basis[1:]
    return [subfield_linear_map(spec, d, basis, im) for im in (cycle, transvection, diag)]


def closure_tables(generators: Sequence[AdditiveMap] | Sequence[np.ndarray]) -> np.ndarray:
    """All products of the generators, as rows of image tables (breadth-first order).

    Works for any permutations of a finite set given as image arrays.
    """
    gens = [np.asarray(g.table if isinstance(g, AdditiveMap) else g, dtype=np.int64) for g in generators]
    if not gens:
        raise ValueError("closure of an empty generating set is undefined here")
    q = gens[0].shape[0]
    ident = np.arange(q, dtype=np.int64)
    seen = {ident.tobytes()}
    out = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                e = g[h]  # g ∘ h
                key = e.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(e)
                    nxt.append(e)
        frontier = nxt
    return np.array(out, dtype=np.int64)


def table_to_map(table: Sequence[int], p: int, m: int) -> AdditiveMap:
    return AdditiveMap.from_function(lambda x: int(table[x]), p, m)


def semilinear_group(spec: FieldSpec, a: int, b: int) -> np.ndarray:
    """Image tables of every element of G_{a,b} = <GL(K over GF(p^a)), Frob^b>."""
    _check_divisor(spec, a)
    if a % b:
        raise NotADivisor(f"{b} does not divide {a}")
    gens = gl_generators(spec, a) + [frobenius_matrix(spec, b)]
    return closure_tables(gens)


def semilinear_group_order(p: int, m: int, a: int, b: int) -> int:
    return linalg.gl_order(m // a, p**a) * (a // b)


# -- code invariance, a(C), b(C) -----------------------------------------------


def _as_images(sigma, spec: FieldSpec | None = None) -> np.ndarray:
    if isinstance(sigma, AffineElement):
        return sigma.images()
    if isinstance(sigma, AdditiveMap):
        return np.asarray(sigma.table)
    return np.asarray(sigma, dtype=np.int64)


def is_code_invariant(sigma, C: AffineInvariantCode) -> bool:
    """True iff the permutation of K (affine element, additive map or image list) preserves C."""
    images = _as_images(sigma)
    if sorted(images.tolist()) != list(range(C.length)):
        raise ValueError("sigma is not a bijection of K")
    return bool(C.preserved_by(images.reshape(1, -1))[0])


class CodeParams(NamedTuple):
    a: int
    b: int
    trivial: bool = False


def compute_params(C: AffineInvariantCode) -> CodeParams:
    """The invariants (a(C), b(C)).

    ``a`` is the least divisor d of m for which every generator of
    GL(K over GF(p^d)) preserves C; ``b`` is :func:`minimal_b` of the defining
    set.  Trivial codes get ``(1, 1)`` flagged ``trivial`` since their PAut is
    the full symmetric group.
    """
    if C.is_trivial:
        return CodeParams(1, 1, True)
    spec = C.field
    a = None
    for d in divisors(spec.m):
        gens = np.array([g.table for g in gl_generators(spec, d)])
        if C.preserved_by(gens).all():
            a = d
            break
    if a is None:
        raise InternalInconsistency("multiplication by the primitive element must preserve C")
    b = minimal_b(C.D, C.p, C.m)
    if C.r % b or a % b or spec.m % a:
        raise InternalInconsistency(f"expected b | r and b | a | m, got a={a}, b={b}, r={C.r}, m={spec.m}")
    return CodeParams(a, b)


def paut_order(C: AffineInvariantCode) -> int:
    """|PAut(C)| = p^m |GL(m/a, p^a)| (a/b) for nontrivial C."""
    if C.is_trivial:
        raise TrivialCode("PAut of a trivial code is the full symmetric group")
    a, b, _ = C.params
    return C.length * semilinear_group_order(C.p, C.m, a, b)


# -- images of p-subgroups -----------------------------------------------------------


def sum_images_basis(spec: FieldSpec, generators: Sequence[AdditiveMap], a: int) -> list[int]:
    """F_p-basis of the GF(p^a)-span of all ``Im(rho - 1)``, rho in the generated group.

    Raises :class:`NotAPGroup` if the generated group is not a p-group and
    ``ValueError`` if a generator is not GF(p^a)-linear.
    """
    _check_divisor(spec, a)
    p, m = spec.p, spec.m
    for g in generators:
        if not is_d_linear(spec, g, a):
            raise ValueError("generators must be GF(p^a)-linear")
    if generators:
        tables = closure_tables(generators)
    else:
        tables = np.arange(spec.order, dtype=np.int64).reshape(1, -1)
    order = tables.shape[0]
    k = order
    while k % p == 0:
        k //= p
    if k != 1:
        raise NotAPGroup(f"generated group has order {order}, not a power of {p}")
    scalars = subfield(spec, a).fp_basis()
    vecs = set()
    for t in tables:
        for j in range(m):
            e = p**j
            v = vec_sub(int(t[e]), e, p, m)
            if v:
                vecs.update(spec.mul(s, v) for s in scalars)
    if not vecs:
        return []
    rows = digit_table(p, m)[sorted(vecs)]
    return [from_digits(r, p) for r in linalg.row_basis(rows, p)]


def sum_images_proper(spec: FieldSpec, generators: Sequence[AdditiveMap], a: int) -> bool:
    return len(sum_images_basis(spec, generators, a)) < spec.m


def unitriangular_generators(spec: FieldSpec, a: int, basis: Sequence[int] | None = None) -> list[AdditiveMap]:
    """Generators of the upper unitriangular group in a GF(p^a)-basis of K.

    The maps ``b_j -> b_j + s b_i`` (i < j, s running over an F_p-basis of
    GF(p^a)) generate every map fixing ``b_1`` and moving each ``b_j`` within
    ``b_j + <b_1, ..., b_(j-1)>``.
    """
    if basis is None:
        basis = subfield_basis(spec, a)
    basis = list(basis)
    scalars = subfield(spec, a).fp_basis()
    gens = []
    for j in range(len(basis)):
        for i in range(j):
            for s in scalars:
                im = list(basis)
                im[j] = spec.add(basis[j], spec.mul(s, basis[i]))
                gens.append(subfield_linear_map(spec, a, basis, im))
    return gens


def affine_group_images(spec: FieldSpec, linear_tables: np.ndarray) -> np.ndarray:
    """Rows ``x -> L(x) + y`` for every linear table L and translation y."""
    p, m, q = spec.p, spec.m, spec.order
    d = digit_table(p, m)
    place = p ** np.arange(m, dtype=np.int64)
    out = np.empty((linear_tables.shape[0] * q, q), dtype=np.int64)
    for y in range(q):
        moved = (d[linear_tables] + d[y]) % p  # (N, q, m)
        out[y::q] = moved @ place
    return out


def affine_element_from_images(images: Sequence[int], spec: FieldSpec) -> AffineElement | None:
    """Recover ``(t, L)`` from a permutation of K if it is affine, else None."""
    p, m = spec.p, spec.m
    t = int(images[0])
    lin = [vec_sub(int(images[x]), t, p, m) for x in range(spec.order)]
    f = AdditiveMap.from_function(lambda x: lin[x], p, m)
    if list(f.table) != lin:
        return None
    return AffineElement(t, f)

