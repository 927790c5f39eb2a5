import random
from fractions import Fraction

import pytest

from modcat.constructors import deligne_product, double_abelian, pointed, reverse, semion
from modcat.corpus import form_corpus
from modcat.cyclotomic import make_root
from modcat.groups import (BoundExceededError, PreMetricGroup, cyclic_form, double_form,
                           negate_form, orthogonal_sum)
from modcat.witt import (WittError, anisotropic_part, center_type, central_charge, condense,
                         find_form_isomorphism, form_from_pointed, isotropic_subgroups,
                         modularize, module_dims, subgroup, witt_equivalent)

SEMION = cyclic_form(2, 1)
TORIC = double_form([2])


def test_isotropic_examples():
    assert [H.order for H in isotropic_subgroups(SEMION)] == [1]
    subs = isotropic_subgroups(TORIC)
    assert [H.order for H in subs] == [1, 2, 2]
    assert {H.elements for H in subs if H.order == 2} == {
        frozenset({(0, 0), (1, 0)}), frozenset({(0, 0), (0, 1)})}
    # the diagonal is not isotropic: q((1,1)) = 1/2
    assert TORIC.q((1, 1)) == Fraction(1, 2)
    assert len(isotropic_subgroups(PreMetricGroup([2, 2]))) == 5


def test_isotropic_bound():
    with pytest.raises(BoundExceededError):
        isotropic_subgroups(double_form([4]), bound=8)


def test_subgroup_rejects_non_isotropic():
    with pytest.raises(WittError):
        subgroup(TORIC, [(1, 1)])


def test_condense_examples():
    H = subgroup(TORIC, [(1, 0)])
    assert condense(TORIC, H).size == 1
    M = double_form([4])
    assert condense(M, subgroup(M, [(2, 0)])).size == 4
    assert condense(M, subgroup(M, [])) == M


def test_module_dims():
    assert module_dims(TORIC, subgroup(TORIC, [(1, 0)])) == (2, 1)
    C3 = double_form([3])
    assert module_dims(C3, subgroup(C3, [(1, 0)])) == (3, 1)
    assert module_dims(C3, subgroup(C3, [])) == (9, 9)


def test_center_type():
    assert center_type(TORIC).kind == "modular"
    M = PreMetricGroup([2, 2], lambda x: Fraction(x[0] * x[0], 4))
    ct = center_type(M)
    assert ct.radical == [(0, 0), (0, 1)]
    assert ct.kind == "modularizable"
    fermion = PreMetricGroup([2], {(1,): Fraction(1, 2)})
    assert center_type(fermion).kind == "almost"
    assert center_type(orthogonal_sum(fermion, fermion)).kind == "other"


def test_modularize():
    M = PreMetricGroup([2, 2], lambda x: Fraction(x[0] * x[0], 4))
    result = modularize(M)
    assert result.size == 2 and find_form_isomorphism(result, SEMION) is not None
    assert modularize(TORIC) is TORIC
    with pytest.raises(WittError):
        modularize(PreMetricGroup([2], {(1,): Fraction(1, 2)}))


def test_anisotropic_examples():
    assert anisotropic_part(SEMION) == SEMION
    M = orthogonal_sum(SEMION, negate_form(SEMION))
    assert anisotropic_part(M).size == 1


def test_anisotropic_part_is_choice_independent():
    rng = random.Random(7)
    for M in form_corpus():
        A = anisotropic_part(M)
        # condense by a random isotropic subgroup first, then reduce
        subs = [H for H in isotropic_subgroups(M) if H.order > 1]
        if not subs:
            continue
        B = anisotropic_part(condense(M, rng.choice(subs)))
        assert find_form_isomorphism(A, B) is not None


def test_witt_examples():
    assert witt_equivalent(TORIC, PreMetricGroup([])).equivalent
    assert not witt_equivalent(SEMION, negate_form(SEMION)).equivalent
    for M in form_corpus()[:40]:
        assert witt_equivalent(M, M).equivalent


def test_central_charge_examples():
    assert central_charge(TORIC) == 1
    assert central_charge(SEMION) == make_root(8, 1)
    assert central_charge(cyclic_form(3, 2)) == make_root(4, 1)
    assert central_charge(semion()) == make_root(8, 1)


def test_form_from_pointed_round_trip():
    for M in form_corpus()[:60]:
        back = form_from_pointed(pointed(M))
        assert back.size == M.size
        assert find_form_isomorphism(back, M) is not None


def test_form_from_pointed_rejects_non_pointed():
    from modcat.constructors import drinfeld_double
    from modcat.groups import builtin_group
    with pytest.raises(WittError):
        form_from_pointed(drinfeld_double(builtin_group("S3")))


def test_semion_times_reverse_condenses_to_trivial():
    form = form_from_pointed(deligne_product(semion(), reverse(semion())))
    assert anisotropic_part(form).size == 1
    assert form_from_pointed(double_abelian([2])).size == 4
