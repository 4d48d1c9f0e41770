from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import q_product, tensor_count
from twistcrit.characters import (BasisPattern, QSeries, character_table, enumerate_basis,
                                  graded_dims, kernel_excluded2, qseries_product,
                                  verify_basis_independence)
from twistcrit.superalg import TwistedCharacter


def test_product_examples():
    assert qseries_product(Fraction(5, 2)).coeffs == (1, 2, 3, 6, 9, 14)
    assert qseries_product(0).coeffs == (1,)


def test_product_matches_sympy():
    assert list(qseries_product(6).coeffs) == q_product(12)


@given(st.integers(0, 12))
def test_product_monotone_and_equal_to_enumeration(n2):
    prod = qseries_product(Fraction(n2, 2)).coeffs
    assert all(a <= b for a, b in zip(prod, prod[1:]))
    assert enumerate_basis(BasisPattern(None), Fraction(n2, 2))[0].coeffs == prod
    assert prod[-1] == tensor_count(n2)


def test_enumeration_examples():
    counts, monos = enumerate_basis(BasisPattern(0), 1)
    assert counts.coeffs[1] == 1
    assert monos[1] == [((), (1,))]
    assert monos[0] == [((), ())]


def test_pattern_validation():
    with pytest.raises(ValueError):
        BasisPattern(-1)
    assert BasisPattern.for_lambda(0).excluded == Fraction(1, 2)
    assert BasisPattern.for_lambda(Fraction(1, 3)).t is None
    with pytest.raises(ValueError):
        QSeries((1, 2), 3)


def test_kernel_dims():
    dims = graded_dims("kernel", 2, TwistedCharacter.lam(0))
    assert dims.coeffs[1] == 0
    assert kernel_excluded2(Fraction(-1, 2)) == (-2,)
    assert kernel_excluded2(Fraction(1, 3)) == ()


def test_omega_dims_match_fermions():
    chi = TwistedCharacter.lam(Fraction(1, 3))
    assert graded_dims("omega", 2, chi).coeffs == graded_dims("fermion", 2).coeffs


@pytest.mark.parametrize("lam", [Fraction(1, 3), 0, Fraction(-1, 2), Fraction(1, 2)])
def test_basis_independence(lam):
    rep = verify_basis_independence(TwistedCharacter.lam(lam), 1, 1, 2)
    assert rep["ok"], rep["rows"]


def test_character_table_rows():
    rows = character_table(1)
    assert [r["product"] for r in rows] == [1, 2, 3]
    assert all(r["match"] for r in rows)
