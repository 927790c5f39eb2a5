import math

import pytest
from hypothesis import given, settings, strategies as st

from modcat.constructors import diagonal_DN, double_abelian, drinfeld_double, semion
from modcat.cyclotomic import Cyc, CycMatrix, make_root
from modcat.groups import builtin_group, PreMetricGroup
from modcat.constructors import pointed
from modcat.modular_data import ModularDataError, gauss_sums, global_dim
from modcat.sl2z import (check_true_rep, congruence_check, coset_table, cube_roots_of_unity_element,
                         evaluate, gamma_generators, inverse_word, projective_pair,
                         renormalizations, sl2_order, sqrt_int, t_order, word_matrix)


def test_letters_satisfy_relations():
    assert word_matrix(["s"] * 4) == (1, 0, 0, 1)
    assert word_matrix(["s", "t"] * 3) == word_matrix(["s", "s"])
    assert word_matrix(["s", "s^-1", "t", "t^-1"]) == (1, 0, 0, 1)


@pytest.mark.parametrize("m", [2, 3, 5, 6, 8, 12, -3, -4])
def test_sqrt_int(m):
    r = sqrt_int(m)
    assert r * r == m
    z = r.approx()
    expected = math.sqrt(m) if m > 0 else 1j * math.sqrt(-m)
    assert abs(z - expected) <= 1e-12


def test_cube_roots():
    roots = cube_roots_of_unity_element(make_root(4, 1))
    assert len(set(roots)) == 3 and all(r ** 3 == make_root(4, 1) for r in roots)


def test_t_order_examples():
    assert t_order(double_abelian([2])) == 2
    assert t_order(semion()) == 4
    assert t_order(diagonal_DN(3)) == 3


def test_renormalizations_toric():
    reps = renormalizations(double_abelian([2]))
    assert len(reps) == 6
    canon = [r for r in reps if r.canonical]
    assert len(canon) == 1 and canon[0].lam == 2 and canon[0].mu == 1


def test_renormalizations_semion_distinct_and_valid():
    reps = renormalizations(semion())
    assert len({(r.lam, r.mu) for r in reps}) == 6
    assert all(check_true_rep(r) for r in reps)
    assert not any(r.canonical for r in reps)


def test_renormalizations_need_modular_data():
    with pytest.raises(ModularDataError):
        renormalizations(pointed(PreMetricGroup([2])))


def test_evaluate_examples():
    for md in (double_abelian([2]), diagonal_DN(3), semion()):
        rep = renormalizations(md)[0]
        assert evaluate(rep, ["s"] * 4) == CycMatrix.identity(md.rank)
        assert evaluate(rep, []) == CycMatrix.identity(md.rank)
        plus, _ = gauss_sums(md)
        lhs = evaluate(md, ["s", "t"] * 3)
        assert lhs == md.C_matrix.scale(plus * global_dim(md))


def test_coset_counts():
    assert len(coset_table(2).words) == 6
    for N in range(1, 13):
        assert len(coset_table(N).words) == sl2_order(N)
    assert sl2_order(12) == 12 ** 3 * 3 // 4 * 8 // 9


def test_gamma_generators_n1():
    gens = gamma_generators(1)
    assert ("s",) in gens and ("t",) in gens


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_gamma_generators_are_congruent_to_identity(N):
    for w in gamma_generators(N):
        assert word_matrix(w, N) == (1 % N, 0, 0, 1 % N)
    assert gamma_generators(N) == gamma_generators(N)


def test_level_bounds():
    with pytest.raises(ValueError):
        coset_table(25)
    with pytest.raises(ValueError):
        gamma_generators(0)


@settings(max_examples=100)
@given(st.lists(st.sampled_from(["s", "s^-1", "t", "t^-1"]), max_size=12))
def test_inverse_word(word):
    assert word_matrix(list(word) + list(inverse_word(word))) == (1, 0, 0, 1)


@pytest.mark.parametrize("md, N", [(double_abelian([2]), 2), (diagonal_DN(3), 3), (semion(), 4)])
def test_congruence_examples(md, N):
    rep = congruence_check(md)
    assert rep.ok and rep.level == N and rep.cosets == sl2_order(N)
    assert rep.generators == len(gamma_generators(N))


def test_congruence_canonical_scalars_are_one():
    rep = congruence_check(drinfeld_double(builtin_group("S3")))
    assert rep.ok and rep.canonical and rep.all_scalars_one


def test_projective_pair_inverses():
    md = diagonal_DN(5)
    pair = projective_pair(md)
    ident = CycMatrix.identity(md.rank)
    assert pair.mats["s"] @ pair.mats["s^-1"] == ident
    assert pair.mats["t"] @ pair.mats["t^-1"] == ident
