from fractions import Fraction

import pytest

from modcat.constructors import (deligne_product, diagonal_DN, double_abelian, drinfeld_double,
                                 pointed, reverse, semion, trivial)
from modcat.corpus import modular_corpus
from modcat.cyclotomic import Cyc, make_root
from modcat.groups import PreMetricGroup, builtin_group
from modcat.modular_data import (ModularData,
                                 centralizer_of, closure_of, double_braiding,
                                 find_data_isomorphism, gauss_sums, global_dim, gn_pairing,
                                 is_anomaly_free, is_modular, prime_factorize, restrict,
                                 subring_dim, transparent_objects, validate_premodular,
                                 verify_modular_relations, verlinde_check)

I = make_root(4, 1)


def tamper_S(md, i, j, value):
    S = [list(row) for row in md.S]
    S[i][j] = value
    S[j][i] = value
    return ModularData(md.ring, md.dims, md.twists, S)


def tamper_twist(md, i, value):
    tw = list(md.twists)
    tw[i] = value
    return ModularData(md.ring, md.dims, tw, md.S)


def test_validate_examples():
    assert validate_premodular(double_abelian([2])).ok
    assert validate_premodular(semion()).ok
    bad = validate_premodular(tamper_S(double_abelian([2]), 1, 2, Cyc.one()))
    assert not bad.ok
    assert "projection formula" in {c for c, _ in bad.violations}


def test_validate_skips_projection_above_rank_bound():
    md = double_abelian([2])
    rep = validate_premodular(md, max_rank=2)
    assert rep.ok and "projection formula" not in rep.checks and rep.notes


def test_global_dim_examples():
    assert global_dim(double_abelian([2, 3])) == 36
    assert global_dim(semion()) == 2
    assert global_dim(drinfeld_double(builtin_group("S3"))) == 36


def test_transparent_examples():
    assert transparent_objects(double_abelian([2])) == (0,)
    assert transparent_objects(pointed(PreMetricGroup([3]))) == (0, 1, 2)
    toric = double_abelian([2])
    diag = restrict(toric, [0, 3])
    assert transparent_objects(diag) == (0, 1)
    assert diag.twists == [Cyc.one(), Cyc.rational(-1)]


def test_centralizer_of_d_phi_in_c3():
    md = double_abelian([3])
    # index = 3 * g + chi; D_phi = {(k, k)}, its partner is {(k, -k)}
    d_phi = (0, 4, 8)
    assert centralizer_of(md, d_phi) == (0, 5, 7)


def test_is_modular_examples():
    assert is_modular(double_abelian([4])).modular
    assert not is_modular(pointed(PreMetricGroup([2, 2])))
    assert is_modular(semion())


def test_gauss_sum_examples():
    assert gauss_sums(double_abelian([3])) == (Cyc.rational(3), Cyc.rational(3))
    assert gauss_sums(diagonal_DN(3))[0] == 1 + 2 * make_root(3, 1)
    assert gauss_sums(semion())[0] == 1 + I


def test_anomaly_examples():
    assert is_anomaly_free(double_abelian([2, 2]))
    assert not is_anomaly_free(diagonal_DN(3))
    assert not is_anomaly_free(semion())


def test_modular_relations_examples():
    assert verify_modular_relations(drinfeld_double(builtin_group("S3"))).ok
    bad = tamper_twist(double_abelian([2]), 3, Cyc.one())
    rep = verify_modular_relations(bad)
    assert not rep.ok and "TSTST = Omega+ S" in {c for c, _ in rep.violations}


def test_restrict_examples():
    md = double_abelian([3])
    unit = restrict(md, [0])
    assert unit.rank == 1 and global_dim(unit) == 1
    d_phi = restrict(md, [0, 4, 8])
    assert is_modular(d_phi) and global_dim(d_phi) == 3
    diag = restrict(double_abelian([2]), [0, 3])
    assert not is_modular(diag) and len(transparent_objects(diag)) == 2


def test_prime_factorize_c3():
    f = prime_factorize(double_abelian([3]))
    assert not f.is_prime
    assert len(f.primes) == 2 and len(f.factorizations) == 1
    assert {(s.D, s.D_prime) for s in f.splittings} == {((0, 4, 8), (0, 5, 7)),
                                                        ((0, 5, 7), (0, 4, 8))}


def test_prime_factorize_semion_is_prime():
    f = prime_factorize(semion())
    assert f.is_prime and f.primes == []


def test_prime_factorize_splits_off_semion():
    md = deligne_product(double_abelian([2]), semion())
    f = prime_factorize(md)
    semion_factor = (0, 1)  # (unit, s) with index i * 2 + j
    assert any(semion_factor in fac for fac in f.factorizations)
    for s in f.splittings:
        if s.D == semion_factor:
            assert s.D_prime == (0, 2, 4, 6)


def test_verlinde_and_pairing_on_small_data():
    for md in (semion(), double_abelian([2]), diagonal_DN(5)):
        assert verlinde_check(md).ok
        assert gn_pairing(md).ok


def test_find_isomorphism_between_relabelled_data():
    a = deligne_product(semion(), double_abelian([2]))
    b = deligne_product(double_abelian([2]), semion())
    assert find_data_isomorphism(a, b) is not None
    assert find_data_isomorphism(semion(), reverse(semion())) is None


def test_json_round_trip_and_rejection():
    md = drinfeld_double(builtin_group("S3"))
    assert ModularData.from_json(md.to_json()) == md
    with pytest.raises((ValueError, KeyError)):
        ModularData.from_json({"ring": md.ring.to_json(), "dims": [], "T": [], "S": []})


def test_double_braiding_reads_the_dual_row():
    md = double_abelian([3])
    x, y = 1, 3
    assert double_braiding(md, x, y) == md.S[md.ring.dual[x]][y]


def test_subring_dims_and_closure():
    md = trivial()
    assert subring_dim(md, [0]) == 1 and closure_of(md, []) == (0,)


@pytest.mark.parametrize("name, md", modular_corpus(), ids=[n for n, _ in modular_corpus()])
def test_corpus_is_modular_and_valid(name, md):
    assert validate_premodular(md).ok
    assert is_modular(md)
    plus, minus = gauss_sums(md)
    assert plus * minus == global_dim(md)
