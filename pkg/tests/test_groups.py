from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modcat.cyclotomic import Cyc, make_root
from modcat.groups import (BoundExceededError, FiniteGroup, GroupError, NoIdentityError, NoInverseError,
                           NotAssociativeError,
                           PreMetricGroup, abelian_group, builtin_group, centralizer_subgroup,
                           character_table, character_table_from_json, check_character_table,
                           conjugacy_classes, cyclic_group, decompose_abelian, gauss_sum,
                           group_from_json, radical, validate_form)


def test_trivial_and_z2_tables():
    assert FiniteGroup([[0]]).order == 1
    assert FiniteGroup([[0, 1], [1, 0]]).is_abelian()


def test_broken_associativity_names_a_triple():
    # a valid Latin square with identity 0 that is not associative
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociativeError) as exc:
        FiniteGroup(table)
    a, b, c = exc.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_missing_identity_or_inverse():
    with pytest.raises(NoIdentityError):
        FiniteGroup([[1, 0], [0, 1]])
    with pytest.raises(NoInverseError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1]])


def test_abelian_groups():
    G, codec = abelian_group([2, 2])
    assert G.order == 4 and G.is_abelian() and G.exponent == 2
    assert abelian_group([3])[0].order == 3
    assert abelian_group([])[0].order == 1


def test_conjugacy_classes():
    assert sorted(conjugacy_classes(abelian_group([2, 3])[0]).sizes) == [1] * 6
    assert sorted(conjugacy_classes(builtin_group("S3")).sizes) == [1, 2, 3]
    assert sorted(conjugacy_classes(builtin_group("Q8")).sizes) == [1, 1, 2, 2, 2]
    assert sorted(conjugacy_classes(builtin_group("D4")).sizes) == [1, 1, 2, 2, 2]


def test_centralizers():
    S3 = builtin_group("S3")
    assert len(centralizer_subgroup(S3, 0).elements) == 6
    three_cycles = [g for g in range(6) if S3.element_order(g) == 3]
    Z = centralizer_subgroup(S3, three_cycles[0])
    assert Z.group.order == 3 and Z.group.is_abelian()
    A = cyclic_group(5)
    assert all(len(centralizer_subgroup(A, g).elements) == 5 for g in range(5))


def test_character_table_z3():
    ct = character_table(cyclic_group(3))
    allowed = {Cyc.one(), make_root(3, 1), make_root(3, 2)}
    assert len(ct.chars) == 3
    assert all(v in allowed for row in ct.chars for v in row)


@pytest.mark.parametrize("name, degrees", [("S3", [1, 1, 2]), ("D4", [1, 1, 1, 1, 2]),
                                           ("Q8", [1, 1, 1, 1, 2]), ("Z6", [1] * 6)])
def test_character_degrees_and_orthogonality(name, degrees):
    G = builtin_group(name)
    ct = character_table(G)
    assert sorted(ct.degrees) == degrees
    assert check_character_table(G, ct).ok


def test_character_table_round_trip_and_rejection():
    G = builtin_group("S3")
    ct = character_table(G)
    again = character_table_from_json(G, ct.to_json())
    assert again.chars == ct.chars
    bad = ct.to_json()
    bad["chars"][0][0] = {"n": 1, "c": ["2"]}
    with pytest.raises(GroupError):
        character_table_from_json(G, bad)


def test_group_bound():
    with pytest.raises(BoundExceededError):
        character_table(cyclic_group(8), bound=4)


def test_group_json():
    assert group_from_json({"kind": "abelian", "orders": [2, 4]}).order == 8
    assert group_from_json({"kind": "table", "table": [[0, 1], [1, 0]]}).order == 2
    with pytest.raises(GroupError):
        group_from_json({"kind": "free"})


def test_form_validation_examples():
    assert validate_form(PreMetricGroup([2], {(1,): Fraction(1, 4)})).ok
    bad = validate_form(PreMetricGroup([2], {(1,): Fraction(1, 3)}))
    assert not bad.ok and bad.violations
    zero = validate_form(PreMetricGroup([2, 3]))
    assert zero.ok and all(v == 0 for v in zero.bicharacter.values())


def test_radical_examples():
    assert radical(PreMetricGroup([2, 2])) == PreMetricGroup([2, 2]).elements()
    assert radical(PreMetricGroup([2], {(1,): Fraction(1, 4)})) == [(0,)]
    M = PreMetricGroup([2, 2], lambda x: Fraction(x[0] * x[0], 4))
    assert radical(M) == [(0, 0), (0, 1)]


def test_gauss_sum_semion():
    assert gauss_sum(PreMetricGroup([2], {(1,): Fraction(1, 4)})) == 1 + make_root(4, 1)


def test_form_json_round_trip():
    M = PreMetricGroup([2, 4], lambda x: Fraction(x[1] * x[1], 8) + Fraction(x[0] * x[0], 4))
    assert PreMetricGroup.from_json(M.to_json()) == M


@settings(max_examples=60)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_decomposition_recovers_order(orders):
    G, codec = abelian_group(orders)
    elems = codec.elements()
    ords, basis, coords = decompose_abelian(elems, codec.add, codec.zero)
    n = 1
    for o in ords:
        n *= o
    assert n == G.order
    assert len(set(coords.values())) == G.order


@settings(max_examples=30)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=2))
def test_abelian_character_tables_are_orthogonal(orders):
    G, _ = abelian_group(orders)
    ct = character_table(G)
    assert check_character_table(G, ct).ok
    assert Counter(ct.degrees) == Counter({1: G.order})
