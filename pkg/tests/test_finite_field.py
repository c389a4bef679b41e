import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinecodes.errors import FieldMismatch, NonPrime, NotADivisor, ReducibleModulus, ZeroInverse
from affinecodes.finite_field import (
    compositum,
    compositum_embed,
    field_arith,
    frobenius,
    make_field,
    mul_matrix,
    subfield,
)

from oracles import gf_product, gf_sum, irreducible, smallest_irreducible

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)]


def _el(spec, *coeffs):
    return spec.element(list(coeffs))


def test_make_field_gf8_standard_modulus(gf8):
    assert gf8.order == 8
    assert gf8.modulus == (1, 1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, [0, 1, 1])


def test_non_prime_rejected():
    with pytest.raises(NonPrime):
        make_field(4, 2)


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_default_modulus_is_smallest_irreducible(p, m):
    spec = make_field(p, m)
    assert list(spec.modulus) == smallest_irreducible(p, m)
    assert irreducible(list(spec.modulus), p)


def test_default_modulus_gf16():
    assert make_field(2, 4).modulus == (1, 1, 0, 0, 1)


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_primitive_has_full_order(p, m):
    spec = make_field(p, m)
    assert spec.multiplicative_order(spec.primitive) == spec.order - 1


def test_gf8_examples(gf8):
    t = _el(gf8, 0, 1)
    t2 = _el(gf8, 0, 0, 1)
    assert field_arith("mul", t, t2) == _el(gf8, 1, 1)
    assert field_arith("inv", t) == _el(gf8, 1, 0, 1)
    assert field_arith("pow", t, 7) == _el(gf8, 1)
    assert field_arith("add", t, t) == _el(gf8, 0)


def test_zero_inverse(gf8):
    with pytest.raises(ZeroInverse):
        field_arith("inv", _el(gf8, 0))


def test_mixed_fields_rejected(gf8, gf16):
    with pytest.raises(FieldMismatch):
        field_arith("add", _el(gf8, 1), _el(gf16, 1))


@pytest.mark.parametrize("p,m", [(p, m) for p, m in SMALL_FIELDS if p**m <= 81])
def test_multiplication_matches_polynomial_reduction(p, m):
    spec = make_field(p, m)
    mod = list(spec.modulus)
    q = spec.order
    got = np.array([[spec.mul(x, y) for y in range(q)] for x in range(q)])
    want = np.array([[gf_product(x, y, p, mod) for y in range(q)] for x in range(q)])
    assert np.array_equal(got, want)
    assert all(spec.add(x, y) == gf_sum(x, y, p) for x in range(q) for y in range(q))


@pytest.mark.parametrize("p,m", [(p, m) for p, m in SMALL_FIELDS if p**m <= 81])
def test_field_axioms_exhaustive(p, m):
    spec = make_field(p, m)
    q = spec.order
    M = np.array([[spec.mul(x, y) for y in range(q)] for x in range(q)])
    A = np.array([[spec.add(x, y) for y in range(q)] for x in range(q)])
    # associativity and commutativity
    for x in range(q):
        assert np.array_equal(M[M[x]], M[x][M])  # (x y) z == x (y z) for all y, z
        assert np.array_equal(A[A[x]], A[x][A])
    assert np.array_equal(M, M.T) and np.array_equal(A, A.T)
    # distributivity x (y + z) = x y + x z
    for x in range(q):
        assert np.array_equal(M[x][A], A[M[x]][:, M[x]])
    # inverses
    for x in range(1, q):
        assert spec.mul(x, spec.inv(x)) == 1
    for x in range(q):
        assert spec.add(x, spec.neg(x)) == 0


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_fermat(p, m):
    spec = make_field(p, m)
    xs = range(spec.order) if spec.order <= 256 else range(0, spec.order, 7)
    assert all(spec.pow(x, spec.order) == x for x in xs)


def test_frobenius_examples(gf4, gf16):
    w = _el(gf4, 0, 1)
    assert frobenius(w, 1) == _el(gf4, 1, 1)
    assert frobenius(w, 0) == w
    assert all(frobenius(frobenius(gf16.element(x), 2), 2).value == x for x in range(16))


@pytest.mark.parametrize("p,m", [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_frobenius_properties(p, m):
    spec = make_field(p, m)
    q = spec.order
    assert all(spec.frobenius(spec.add(x, y)) == spec.add(spec.frobenius(x), spec.frobenius(y))
               for x in range(q) for y in range(q))
    fixed = [x for x in range(q) if spec.frobenius(x) == x]
    assert fixed == list(range(p))
    seen = set()
    for x in range(1, q):
        if x in seen:
            continue
        orbit = {spec.frobenius(x, j) for j in range(m)}
        seen |= orbit
        assert m % len(orbit) == 0


def test_subfield_examples(gf16):
    t5 = gf16.pow(gf16.t, 5)
    assert t5 == gf16.from_coeffs([0, 1, 1])
    assert subfield(gf16, 2).contains(t5)
    sub1 = subfield(gf16, 1)
    assert sub1.trace_to(gf16.t) == 0
    assert sub1.trace_to(gf16.pow(gf16.t, 3)) == 1


def test_subfield_needs_divisor(gf16):
    with pytest.raises(NotADivisor):
        subfield(gf16, 3)


@pytest.mark.parametrize("p,m", [(2, 4), (2, 6), (3, 2), (3, 4), (2, 3)])
def test_subfield_structure_and_trace(p, m):
    spec = make_field(p, m)
    q = spec.order
    for d in range(1, m + 1):
        if m % d:
            continue
        S = subfield(spec, d)
        assert len(S.elements) == p**d
        assert S.elements == {x for x in range(q) if spec.frobenius(x, d) == x}
        assert all(spec.add(x, y) in S.elements and spec.mul(x, y) in S.elements
                   for x in S.elements for y in S.elements)
        traces = [S.trace_to(x) for x in range(q)]
        assert set(traces) == set(S.elements)
        for g in S.elements:
            for x in range(0, q, max(1, q // 32)):
                assert S.trace_to(spec.mul(g, x)) == spec.mul(g, traces[x])


def test_compositum_gf4_into_gf16(gf16):
    gf4_default = make_field(2, 2)
    comp = compositum(gf4_default, gf16)
    w = gf4_default.element([0, 1])
    assert compositum_embed(w, comp).value == gf16.from_coeffs([0, 1, 1])
    assert compositum_embed(gf4_default.element(1), comp).value == 1


def test_compositum_identity_when_r_equals_m(gf8):
    comp = compositum(gf8, gf8)
    assert all(comp.embed_field(x) == x and comp.embed_alphabet(x) == x for x in range(8))


@pytest.mark.parametrize("r,m", [(2, 4), (4, 2), (2, 3), (3, 2), (1, 3), (2, 6), (3, 6)])
def test_compositum_is_ring_homomorphism(r, m):
    F, K = make_field(2, r), make_field(2, m)
    comp = compositum(F, K)
    L = comp.big
    assert L.m == np.lcm(r, m)
    for src, emb in ((F, comp.embed_alphabet), (K, comp.embed_field)):
        imgs = [emb(x) for x in range(src.order)]
        assert len(set(imgs)) == src.order
        assert imgs[1] == 1
        for x, y in itertools.product(range(src.order), repeat=2):
            assert emb(src.add(x, y)) == L.add(imgs[x], imgs[y])
            assert emb(src.mul(x, y)) == L.mul(imgs[x], imgs[y])
        # embeddings commute with Frobenius
        assert all(emb(src.frobenius(x)) == L.frobenius(imgs[x]) for x in range(src.order))


def test_mul_matrix_examples(gf4):
    assert mul_matrix(gf4, 1).is_identity()
    assert mul_matrix(gf4, 0).is_zero()
    w = mul_matrix(gf4, gf4.from_coeffs([0, 1]))
    # columns are the coordinates of w * 1 and w * w
    assert w.to_rows() == [[0, 1], [1, 1]]


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (2, 4)])
def test_mul_matrix_invertible_iff_nonzero(p, m):
    spec = make_field(p, m)
    for g in range(spec.order):
        M = mul_matrix(spec, g)
        assert M.is_invertible == (g != 0)
        assert all(M(y) == spec.mul(g, y) for y in range(spec.order))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 5), (2, 6), (3, 3), (5, 2), (7, 2)]), st.data())
def test_random_arith_against_polynomials(pm, data):
    p, m = pm
    spec = make_field(p, m)
    x = data.draw(st.integers(0, spec.order - 1))
    y = data.draw(st.integers(0, spec.order - 1))
    assert spec.mul(x, y) == gf_product(x, y, p, list(spec.modulus))
    if x:
        assert spec.mul(spec.inv(x), x) == 1
