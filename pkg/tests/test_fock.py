from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import odd_partition_count, strict_partition_count, tensor_count
from twistcrit.fock import (BOSON, FERMION, TENSOR, FockSpace, FockVector, HalfInt, check_clifford,
                            check_heisenberg, epsilon, graded_basis, heisenberg_apply, phi_apply)

h = Fraction(1, 2)


def fermion(*modes2):
    return FockVector.monomial(FERMION, tuple(modes2))


def test_clifford_examples():
    assert phi_apply(h, fermion(-1), 1) == fermion()
    assert phi_apply(1, fermion(-2), 1) == fermion() * -1
    assert phi_apply(-h, fermion(-1), 1) == FockVector(FERMION)
    # canonical order is increasing modes; the other order costs a sign
    assert phi_apply(-1, fermion(-1), 1) == fermion(-2, -1)
    assert phi_apply(-h, fermion(-2), 1) == fermion(-2, -1) * -1


def test_zero_mode_squares_to_minus_half():
    for sector in (1, 2):
        v = fermion(-3, -1)
        assert phi_apply(0, phi_apply(0, v, sector), sector) == v * Fraction(-1, 2)
        assert epsilon(sector) * epsilon(sector) == Fraction(-1, 2)


def test_heisenberg_examples():
    b = FockVector.monomial(BOSON, (-1, -1))
    assert heisenberg_apply(h, b) == FockVector.monomial(BOSON, (-1,)) * -1
    assert heisenberg_apply(-h, FockVector.vacuum(BOSON)) == FockVector.monomial(BOSON, (-1,))


def test_graded_counts_examples():
    assert len(graded_basis(FERMION, Fraction(5, 2))) == 3
    assert graded_basis(TENSOR, 0) == [((), ())]
    with pytest.raises(ValueError):
        graded_basis(FERMION, -1)


@given(st.integers(0, 10))
def test_dims_match_partition_oracles(d2):
    assert len(FockSpace(FERMION).basis2(d2)) == strict_partition_count(d2)
    assert len(FockSpace(BOSON).basis2(d2)) == odd_partition_count(d2)
    assert len(FockSpace(TENSOR).basis2(d2)) == tensor_count(d2)


def test_kernel_space_drops_mode():
    space = FockSpace(FERMION, (-1,))
    assert space.dims2(4) == [1, 0, 1, 1, 1]


@pytest.mark.parametrize("sector", [1, 2])
def test_clifford_relations(sector):
    rep = check_clifford(3, 3, sector)
    assert rep["checked"] > 1000 and not rep["violations"]


def test_heisenberg_relations():
    rep = check_heisenberg(3, 3)
    assert not rep["violations"]


@given(st.integers(-6, 6), st.integers(0, 6))
def test_modes_shift_degree(r2, d2):
    for mono in FockSpace(FERMION).basis2(d2):
        out = phi_apply(HalfInt.from_doubled(r2), FockVector.monomial(FERMION, mono), 1)
        assert out.degrees2() <= {d2 - r2}
    if r2 % 2:
        for mono in FockSpace(BOSON).basis2(d2):
            out = heisenberg_apply(HalfInt.from_doubled(r2), FockVector.monomial(BOSON, mono))
            assert out.degrees2() <= {d2 - r2}


def test_halfint_formatting():
    assert str(HalfInt(Fraction(3, 2))) == "3/2"
    assert str(HalfInt(-1)) == "-1"
    with pytest.raises(ValueError):
        HalfInt(Fraction(1, 3))
