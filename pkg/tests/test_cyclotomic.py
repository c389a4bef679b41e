import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affinecodes.code import enumerate_affine_invariant
from affinecodes.cyclotomic import (
    closing_degrees,
    cyclotomic_class,
    cyclotomic_classes,
    is_union_of_classes,
    minimal_b,
    padic_expansion,
    preceq,
)
from affinecodes.errors import NonCoprimeMultiplier
from affinecodes.finite_field import divisors


def test_padic_examples():
    assert padic_expansion(6, 2).digits == (0, 1, 1)
    assert padic_expansion(5, 3).digits == (2, 1)
    assert padic_expansion(0, 7).digits == (0,)


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5, 7]))
def test_padic_round_trip(x, p):
    e = padic_expansion(x, p)
    assert all(0 <= d < p for d in e.digits)
    assert int(e) == sum(d * p**i for i, d in enumerate(e.digits))
    assert int(e) == x
    assert x == 0 or e.digits[-1] != 0


def test_preceq_examples():
    assert preceq(1, 3, 2)
    assert not preceq(2, 5, 2)
    assert all(preceq(x, x, 3) for x in range(50))


@pytest.mark.parametrize("p,n", [(2, 256), (3, 243), (5, 125)])
def test_preceq_is_partial_order(p, n):
    le = [[preceq(s, t, p) for t in range(n)] for s in range(n)]
    for s in range(n):
        assert le[s][s]
        for t in range(n):
            if le[s][t]:
                assert s <= t
                if le[t][s]:
                    assert s == t
    # transitivity on a stride to keep the triple loop affordable
    for s, t, u in itertools.product(range(0, n, 5), range(0, n, 3), range(n)):
        if le[s][t] and le[t][u]:
            assert le[s][u]


def test_cyclotomic_class_examples():
    assert cyclotomic_class(1, 2, 7).members == (1, 2, 4)
    assert cyclotomic_class(3, 2, 7).members == (3, 5, 6)
    assert cyclotomic_class(1, 4, 15).members == (1, 4)


def test_noncoprime_multiplier():
    with pytest.raises(NonCoprimeMultiplier):
        cyclotomic_class(1, 3, 15)


@pytest.mark.parametrize("q,n", [(2, 7), (2, 15), (4, 15), (3, 8), (9, 80), (2, 63), (8, 63)])
def test_classes_partition(q, n):
    classes = cyclotomic_classes(q, n)
    seen = [x for c in classes for x in c.members]
    assert sorted(seen) == list(range(n))
    for c in classes:
        assert c.members[0] == min(c.members)
        assert {(x * q) % n for x in c.members} == set(c.members)


def test_union_of_classes_examples():
    assert not is_union_of_classes({0, 1}, 2, 3)
    assert is_union_of_classes({0, 1}, 4, 3)
    assert is_union_of_classes({0, 1, 2, 4}, 2, 7)


def test_top_exponent_is_ignored():
    # p^m - 1 sits outside the residues and never breaks closure
    assert is_union_of_classes({0, 1, 2, 3}, 2, 3)
    assert is_union_of_classes(set(range(8)), 2, 7)


def test_minimal_b_examples():
    assert minimal_b({0, 1}, 2, 2) == 2
    assert minimal_b({0, 1, 2, 4}, 2, 3) == 1
    assert all(minimal_b({0}, p, m) == 1 for p, m in [(2, 2), (2, 4), (3, 2), (5, 3)])


@pytest.mark.parametrize("p,m,r", [(2, 2, 2), (2, 3, 1), (2, 3, 3), (2, 4, 1), (2, 4, 2), (2, 4, 4), (3, 2, 1), (3, 2, 2),
                                   (2, 6, 2), (2, 6, 3)])
def test_minimal_b_divides_m_and_r_and_closes_upward(p, m, r):
    for ds in enumerate_affine_invariant(p, m, r):
        b = minimal_b(ds.elements, p, m)
        assert m % b == 0
        assert r % b == 0
        works = closing_degrees(ds.elements, p, m)
        for d in works:
            for d2 in divisors(m):
                if d2 % d == 0:
                    assert d2 in works
        assert min(works) == b
