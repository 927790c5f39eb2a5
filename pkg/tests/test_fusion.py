import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from modcat.constructors import double_abelian, drinfeld_double
from modcat.fusion import (FusionRing, FusionRingError, closure, enumerate_subrings, fp_dims,
                           grading_group, group_ring, invertibles, smith_normal_form,
                           validate_fusion_ring)
from modcat.groups import BoundExceededError, abelian_group, builtin_group, cyclic_group


def ring_of_group(G):
    return group_ring(G.table, G.inverse)


def rep_s3_ring():
    # 0 = unit, 1 = sign, 2 = standard; 2 x 2 = 0 + 1 + 2
    N = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (0, 2, 2): 1, (2, 0, 2): 1,
         (1, 1, 0): 1, (1, 2, 2): 1, (2, 1, 2): 1,
         (2, 2, 0): 1, (2, 2, 1): 1, (2, 2, 2): 1}
    return FusionRing(3, [0, 1, 2], N)


@pytest.fixture(scope="module")
def ds3():
    return drinfeld_double(builtin_group("S3"))


def test_group_ring_is_valid_and_commutative():
    rep = validate_fusion_ring(ring_of_group(cyclic_group(2)))
    assert rep.ok and rep.commutative


def test_duality_violation_detected():
    N = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 2}
    rep = validate_fusion_ring(FusionRing(2, [0, 1], N))
    assert not rep.ok
    assert rep.violations


def test_negative_coefficients_rejected():
    with pytest.raises(FusionRingError):
        FusionRing(1, [0], {(0, 0, 0): -1})


def test_ds3_ring_valid(ds3):
    assert validate_fusion_ring(ds3.ring).ok


def test_fp_dims_examples(ds3):
    pointed = ring_of_group(abelian_group([2, 3])[0])
    fp = fp_dims(pointed)
    assert all(abs(d - 1) <= 1e-9 for d in fp.dims)
    assert abs(fp.total - 6) <= 1e-9
    fp = fp_dims(ds3.ring)
    assert sorted(round(d) for d in fp.dims) == [1, 1, 2, 2, 2, 2, 3, 3]
    assert abs(fp.total - 36) <= 1e-9 and fp.error <= 1e-9
    for n in (1, 4, 7):
        assert abs(fp_dims(ring_of_group(cyclic_group(n))).total - n) <= 1e-9


def test_smith_normal_form():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])[0] == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]])[0] == []
    assert smith_normal_form([[4, 0], [0, 0]])[0] == [4]


@settings(max_examples=200)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=2, max_size=4))
def test_smith_form_divisibility_and_determinantal_gcd(rows):
    diag, _ = smith_normal_form(rows)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    g = 0
    for row in rows:
        for v in row:
            g = math.gcd(g, v)
    assert (nz[0] if nz else 0) == g


def test_grading_examples(ds3):
    G = grading_group(ring_of_group(abelian_group([2, 2])[0]))
    assert G.orders == [2, 2]
    assert len(set(G.degree)) == 4
    assert grading_group(rep_s3_ring()).orders == []
    assert grading_group(double_abelian([2]).ring).orders == [2, 2]
    assert grading_group(ring_of_group(abelian_group([4, 6])[0])).orders == [2, 12]


def test_invertibles_examples(ds3):
    assert invertibles(ring_of_group(cyclic_group(5))).members == list(range(5))
    assert len(invertibles(ds3.ring).members) == 2
    assert invertibles(rep_s3_ring()).members == [0, 1]


def test_subring_examples(ds3):
    assert len(enumerate_subrings(ring_of_group(abelian_group([2, 2])[0]))) == 5
    assert enumerate_subrings(FusionRing(1, [0], {(0, 0, 0): 1})) == [(0,)]
    # flux-free objects (unit conjugacy class) form the Rep(S3) subring
    rep_part = tuple(i for i in range(ds3.rank) if ds3.ring.fuse(i, 0) and i < 3)
    assert rep_part in enumerate_subrings(ds3.ring)
    with pytest.raises(BoundExceededError):
        enumerate_subrings(ds3.ring, max_rank=4)


def test_closure_contains_duals():
    R = ring_of_group(cyclic_group(6))
    assert closure(R, [2]) == frozenset({0, 2, 4})


@settings(max_examples=40)
@given(st.lists(st.integers(2, 5), min_size=1, max_size=2))
def test_subrings_of_group_rings_are_subgroups(orders):
    G, _ = abelian_group(orders)
    R = ring_of_group(G)
    subs = enumerate_subrings(R, max_rank=G.order)
    for K in subs:
        assert all(G.table[a][b] in K for a in K for b in K)
    # a subgroup is generated by at most len(orders) elements
    expected = {closure(R, [a, b]) for a in range(G.order) for b in range(G.order)}
    assert {frozenset(K) for K in subs} == expected


RINGS = {
    "Rep(S3)": rep_s3_ring,
    "D(S3)": lambda: drinfeld_double(builtin_group("S3")).ring,
    "D(Q8)": lambda: drinfeld_double(builtin_group("Q8")).ring,
    "Z/3 x Z/4": lambda: ring_of_group(abelian_group([3, 4])[0]),
}


@pytest.mark.parametrize("name", sorted(RINGS))
def test_fp_dims_are_a_ring_homomorphism(name):
    R = RINGS[name]()
    d = fp_dims(R).dims
    inv = set(invertibles(R).members)
    for i in range(R.rank):
        assert d[i] >= 1 - 1e-9
        assert (abs(d[i] - 1) <= 1e-9) == (i in inv)
        for j in range(R.rank):
            rhs = sum(n * d[k] for k, n in R.fuse(i, j).items())
            assert abs(d[i] * d[j] - rhs) <= 1e-9


def test_ds3_dims_multiset(ds3):
    assert Counter(round(x) for x in fp_dims(ds3.ring).dims) == Counter({1: 2, 2: 4, 3: 2})


def test_json_round_trip(ds3):
    assert FusionRing.from_json(ds3.ring.to_json()) == ds3.ring
