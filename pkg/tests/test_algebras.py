import pytest

from braidcalc.algebras import FiniteDimAlgebra, check_algebra, multiply
from braidcalc.linalg import DimensionMismatch, LinMap
from braidcalc.scalars import Q

from oracles import basis, oracle_pointwise_product


def test_fixture_algebras_pass(one, k2, gr, k4):
    for g in (one, k2, gr, k4):
        assert check_algebra(g.alg).ok_all


def test_k2_matches_pointwise_oracle(k2):
    for i in range(2):
        for j in range(2):
            expected = oracle_pointwise_product(basis(2, i), basis(2, j))
            assert list(multiply(k2.alg, basis(2, i), basis(2, j))) == expected


def test_scaled_product_entry_breaks_unitality(k2):
    rows = [[k2.mult.entry(i, j) for j in range(4)] for i in range(2)]
    rows[1][3] = Q(2)
    bad = FiniteDimAlgebra(2, k2.unit, LinMap.from_entries(2, 4, rows), ("d_e", "d_g"))
    rep = check_algebra(bad)
    assert not rep.ok_all
    # pointwise scaling keeps associativity; the unit laws are what breaks
    assert rep.passed("ALG_ASSOC")
    assert {e.id for e in rep.failures()} == {"ALG_UNIT_L", "ALG_UNIT_R"}
    assert rep["ALG_UNIT_L"].witness["input"] == ["0", "1"]


def test_asymmetric_corruption_breaks_associativity_with_witness(k2):
    rows = [[k2.mult.entry(i, j) for j in range(4)] for i in range(2)]
    rows[1][2] = Q(1)  # d_g * d_e picks up a spurious d_g component
    bad = FiniteDimAlgebra(2, k2.unit, LinMap.from_entries(2, 4, rows), ("d_e", "d_g"))
    rep = check_algebra(bad)
    entry = rep["ALG_ASSOC"]
    assert entry.status == "fail"
    # first failing basis triple is (d_g, d_e, d_g): index 5 of the 8 triples
    assert entry.witness["input"] == ["0", "0", "0", "0", "0", "1", "0", "0"]
    assert entry.note == "basis triple (d_g, d_e, d_g)"


def test_multiply_examples(gr, k2):
    theta = basis(2, 1)
    assert list(multiply(gr.alg, theta, theta)) == [Q(0), Q(0)]
    assert list(multiply(k2.alg, basis(2, 0), basis(2, 1))) == [Q(0), Q(0)]
    unit_vec = list(k2.unit.col(0))
    for i in range(2):
        assert list(multiply(k2.alg, unit_vec, basis(2, i))) == list(basis(2, i))


def test_multiply_dimension_check(k2):
    with pytest.raises(DimensionMismatch):
        multiply(k2.alg, [Q(1)], [Q(1), Q(0)])


def test_simplified_algebras_pass(k2, gr, one):
    from braidcalc.groups import simplified_algebra

    for g in (k2, gr, one):
        assert check_algebra(simplified_algebra(g)).ok_all
