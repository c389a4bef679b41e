import math

import numpy as np
import pytest

from affinecodes.additive import AdditiveMap
from affinecodes.code import make_code
from affinecodes.descriptors import build_descriptor_group
from affinecodes.errors import ChiNotLinear, CondViolation, DegenerateA, NotACocycle, NotADivisor, TrivialCode
from affinecodes.finite_field import make_field, mul_matrix, subfield, trace_matrix
from affinecodes.groups import fingerprint
from affinecodes.linalg import rank
from affinecodes.semilinear import closure_tables, semilinear_group_order
from affinecodes.structures import (
    AlphaMap,
    abelian_partner,
    admissible_partners,
    build_regular_group,
    centralizer_alpha,
    check_iyb,
    classify_chi_f,
    cocycle_identity_holds,
    decompose_chi_f,
    enumerate_chi_f,
    estr_case,
    estr_descriptor,
    first_iyb_violation,
    is_twosided_alpha,
    lambda_plus_holds,
    make_chi_f,
    nonabelian_exists,
    nonabelian_witness,
    witness_f,
)

from oracles import find_isomorphism

T, T2, T3 = 2, 4, 8  # t, t^2, t^3 in GF(16) with the power-basis encoding


@pytest.fixture(scope="module")
def f_t3_to_t():
    return AdditiveMap.from_basis_images([1, T, T2, T3], [0, 0, 0, T], 2, 4)


@pytest.fixture(scope="module")
def pair_tr(gf16, f_t3_to_t):
    return make_chi_f(gf16, trace_matrix(gf16, 1), f_t3_to_t, 1)


@pytest.fixture(scope="module")
def pair_shifted(gf16, f_t3_to_t):
    return make_chi_f(gf16, trace_matrix(gf16, 1, T), f_t3_to_t, 1)


def _additive_maps_into(spec, d):
    """Every additive map K -> GF(p^d), via images of the power basis."""
    sub = sorted(subfield(spec, d).elements)
    basis = [spec.p**j for j in range(spec.m)]
    for images in np.ndindex(*([len(sub)] * spec.m)):
        yield AdditiveMap.from_basis_images(basis, [sub[i] for i in images], spec.p, spec.m)


def test_trivial_alpha(gf16):
    alpha = AlphaMap.trivial(gf16)
    assert check_iyb(alpha)
    G = build_regular_group(alpha)
    assert G.is_abelian() and fingerprint(G).abelian_invariants == (2, 2, 2, 2)
    assert is_twosided_alpha(alpha, 1) and is_twosided_alpha(alpha, 4)


@pytest.mark.parametrize("x", [1, 5, 15])
def test_single_perturbation_breaks_the_cocycle_law(gf16, x):
    vals = list(AlphaMap.trivial(gf16).values)
    vals[x] = mul_matrix(gf16, gf16.primitive)
    alpha = AlphaMap(gf16, vals)
    assert not check_iyb(alpha)
    bad = first_iyb_violation(alpha)
    assert bad is not None
    with pytest.raises(NotACocycle):
        build_regular_group(alpha)
    with pytest.raises(NotACocycle):
        is_twosided_alpha(alpha, 1)


def test_spec_pairs_over_gf16(gf16, pair_tr, pair_shifted):
    chi = trace_matrix(gf16, 1)
    assert [chi(v) for v in (1, T, T2, T3)] == [0, 0, 0, 1]
    assert pair_tr.kernel_relation() == "equal"
    assert trace_matrix(gf16, 1, T)(T2) == 1
    assert pair_shifted.kernel_relation() == "kerf-not-in-kerchi"


def test_cond_violations(gf16, f_t3_to_t):
    chi = trace_matrix(gf16, 1)
    f_bad = AdditiveMap.from_basis_images([1, T, T2, T3], [0, 0, 0, T3], 2, 4)
    with pytest.raises(CondViolation) as err:
        make_chi_f(gf16, chi, f_bad, 1)
    assert err.value.clause == "f^2=0"
    cases = [
        (AdditiveMap.zero(4, 2), f_t3_to_t, "chi!=0"),
        (chi, AdditiveMap.zero(4, 2), "f!=0"),
        (mul_matrix(gf16, 3), f_t3_to_t, "chi-range"),
        (chi, AdditiveMap.from_basis_images([1, T, T2, T3], [0, 0, T3, 0], 2, 4), "chi∘f=0"),
    ]
    for c, f, clause in cases:
        with pytest.raises(CondViolation) as err:
            make_chi_f(gf16, c, f, 1)
        assert err.value.clause == clause
    # an F_2-linear f that is not F_4-linear
    with pytest.raises(CondViolation) as err:
        make_chi_f(gf16, trace_matrix(gf16, 2), f_t3_to_t, 2)
    assert err.value.clause in ("f-linear", "chi∘f=0")
    with pytest.raises(DegenerateA):
        make_chi_f(gf16, chi, f_t3_to_t, 4)
    with pytest.raises(NotADivisor):
        make_chi_f(gf16, chi, f_t3_to_t, 3)


def test_classify_spec_pairs(pair_tr, pair_shifted):
    c1 = classify_chi_f(pair_tr)
    assert c1.abelian and c1.exponent == 4
    c2 = classify_chi_f(pair_shifted)
    assert not c2.abelian
    assert c2.center == (0, 1, 2, 3)  # span{1, t}
    assert c2.exponent == 4


def test_nonabelian_group_from_explicit_commutator(pair_shifted):
    G = pair_shifted.group
    g, h = T2, T3
    assert G.perms[g, h] != G.perms[h, g]
    assert any(G.element_order(x) == 4 for x in range(16))


def test_decomposition_spec_pairs(pair_tr, pair_shifted):
    d1 = decompose_chi_f(pair_tr)
    assert d1.dims == (2, 1, 0, 1, 0)
    d2 = decompose_chi_f(pair_shifted)
    assert d2.dims == (1, 1, 1, 0, 1)
    for d in (d1, d2):
        basis = d.Z + d.V + d.W + d.Wp + d.U
        assert len(basis) == 4
        rows = np.array([[b >> i & 1 for i in range(4)] for b in basis])
        assert rank(rows, 2) == 4
        assert len({tuple(x) for x in d.iso}) == 16


def test_estr_spec_pairs(pair_tr, pair_shifted):
    d1 = estr_descriptor(pair_tr)
    assert estr_case(pair_tr) == "b"
    assert d1.render() == "C2×C2×C4" and d1.order == 16
    d2 = estr_descriptor(pair_shifted)
    assert estr_case(pair_shifted) == "c"
    assert d2.render() == "F2 × (F2×F2)⋊F2"
    for cf, d in ((pair_tr, d1), (pair_shifted, d2)):
        assert find_isomorphism(build_descriptor_group(d).table, cf.group.table) is not None


def test_estr_odd_characteristic():
    K = make_field(3, 2)
    chi = trace_matrix(K, 1)
    cf = make_chi_f(K, chi, abelian_partner(K, chi, 1), 1)
    assert estr_case(cf) == "a"
    assert estr_descriptor(cf).render() == "F3^2"
    assert classify_chi_f(cf).exponent == 3


def test_chi_not_f4_linear(gf16):
    chi = trace_matrix(gf16, 1)  # additive with values in F_2, not F_4-linear
    partners = [f for f in admissible_partners(gf16, 2) if (chi @ f).is_zero()]
    assert partners
    cf = make_chi_f(gf16, chi, partners[0], 2)
    assert not cf.chi_is_linear
    assert not is_twosided_alpha(cf.alpha, 2)
    assert not classify_chi_f(cf).abelian
    with pytest.raises(ChiNotLinear):
        estr_descriptor(cf)


def test_chi_f4_linear_is_twosided(gf16):
    chi = trace_matrix(gf16, 2)
    cf = make_chi_f(gf16, chi, abelian_partner(gf16, chi, 2), 2)
    assert is_twosided_alpha(cf.alpha, 2)
    assert estr_case(cf) == "b"
    assert fingerprint(cf.group).abelian_invariants == (4, 4)


def test_twosided_for_linear_chi_over_gf16(gf16):
    for cf in enumerate_chi_f(gf16, 1, ranks=[1]):
        assert is_twosided_alpha(cf.alpha, 1)


def _a2_pairs(gf16):
    partners = admissible_partners(gf16, 2)
    for chi in _additive_maps_into(gf16, 2):
        if chi.is_zero():
            continue
        for f in partners:
            if (chi @ f).is_zero():
                yield make_chi_f(gf16, chi, f, 2)


def test_abelian_criterion_both_directions(gf16):
    """abelian iff chi is GF(p^a)-linear with ker chi inside ker f, a = 1 and a = 2."""
    seen = {True: 0, False: 0}
    pairs = list(enumerate_chi_f(gf16, 1)) + list(_a2_pairs(gf16))
    for cf in pairs:
        cls = classify_chi_f(cf)
        inside = all(cf.f(x) == 0 for x in range(16) if cf.chi(x) == 0)
        want = cf.chi_is_linear and inside
        assert cls.abelian == want == cf.group.is_abelian()
        seen[want] += 1
        if not want:
            centre = [z for z in range(16) if cf.f(z) == 0 and cf.chi(z) == 0]
            assert cf.group.center_points() == centre
        assert cls.exponent == 4
        assert any(cf.group.element_order(x) == 4 for x in range(16))
    assert seen[True] and seen[False]


def test_image_of_alpha_is_a_p_group(gf16):
    for cf in list(enumerate_chi_f(gf16, 1, ranks=[1]))[:40]:
        values = cf.alpha.distinct_values()
        order = len(closure_tables(values))
        assert order == 2 ** round(math.log2(order))


def test_solo_trivial_order_is_coprime(length4_codes, length9_codes):
    for C in length4_codes + length9_codes:
        a, b, _ = C.params
        if a == C.m and math.gcd(a // b, C.p) == 1:
            assert math.gcd(semilinear_group_order(C.p, C.m, a, b), C.p) == 1


def test_cocycle_and_lambda_plus_and_double_centralizer(gf16):
    pairs = list(enumerate_chi_f(gf16, 1, ranks=[1, 2]))
    for cf in pairs[::7]:
        alpha = cf.alpha
        assert cocycle_identity_holds(alpha)
        if is_twosided_alpha(alpha, 1):
            assert lambda_plus_holds(alpha)
        back = centralizer_alpha(centralizer_alpha(alpha))
        assert np.array_equal(back.tables, alpha.tables)
        cent = build_regular_group(centralizer_alpha(alpha))
        assert np.array_equal(cent.perms, cf.group.perms.T)


def test_nonabelian_exists_examples(hamming8, length4_codes, length9_codes):
    assert nonabelian_exists(hamming8)
    assert not any(nonabelian_exists(C) for C in length4_codes)
    full = [C for C in length9_codes if C.params.a == C.m]
    assert full and not any(nonabelian_exists(C) for C in full)
    assert nonabelian_witness(length4_codes[0]) is None
    with pytest.raises(TrivialCode):
        nonabelian_exists(make_code(2, 3, 1, [0]))


def test_length8_witness(hamming8):
    w = nonabelian_witness(hamming8)
    assert w.case == "c"
    assert w.group.order == 8 and not w.group.is_abelian()
    assert w.descriptor.render() == "(F2×F2)⋊F2"


def test_length16_witness_constructions(rm16, gf16):
    assert rm16.params.a == 1
    w1 = nonabelian_witness(rm16, u=1, kind="f1")
    assert w1.case == "c" and not w1.group.is_abelian()
    chi = trace_matrix(gf16, 1)
    cf2 = make_chi_f(gf16, chi, witness_f(gf16, chi, 1, 1, "f2"), 1)
    assert estr_case(cf2) == "b" and cf2.group.is_abelian()
    for kind in ("f1", "f2"):
        with pytest.raises(ValueError):
            witness_f(gf16, chi, 1, 2, kind)
