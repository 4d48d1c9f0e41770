from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcrit.affine import (BETA, H_HALF_PAIRING, APlusModes, Sl2ThetaModule, Weight,
                              _x_minus_alternative, a_plus_constant, etw_exponential,
                              highest_weight_data, lattice_constant, omega_preservation,
                              tensor_cyclic_span, vacuum_space, verify_sl2_theta, ytw_lattice)
from twistcrit.fock import BOSON, TENSOR, FockSpace, FockVector, HalfInt
from twistcrit.scalars import I, SQRT2
from twistcrit.superalg import TwistedCharacter

h = Fraction(1, 2)


def test_e_minus_first_order():
    em = etw_exponential(BETA, -1)
    assert em.apply(1, ()) == {(-1,): 2}
    assert em.apply(0, ()) == {(): 1}


def test_e_plus_on_vacuum_is_identity():
    ep = etw_exponential(BETA, 1)
    assert ep.apply(0, ()) == {(): 1}
    assert ep.apply(-1, ()) == {}


def test_e_plus_against_manual_expansion():
    # E^+ = exp(-2 beta(1/2) z^{-1/2} - ...): z^{-1/2} on beta(-1/2) 1 gives -2 * (-1/2) 1 = 1
    ep = etw_exponential(BETA, 1)
    assert ep.apply(-1, (-1,)) == {(): 1}


@pytest.mark.parametrize("j", [1, 2])
def test_lattice_examples(j):
    y = ytw_lattice(1, j)
    const = I * (-2) * (-1) ** j
    assert lattice_constant(j) == const
    assert y.apply(0, ()) == {(): const}
    assert y.apply(1, ()) == {(-1,): const * 2}


@given(st.integers(-4, 4), st.integers(0, 5), st.sampled_from([1, -1]))
@settings(max_examples=30)
def test_lattice_degree_bookkeeping(k2, d2, sign):
    y = ytw_lattice(sign, 1)
    for mono in FockSpace(BOSON).basis2(d2):
        for out in y.apply(k2, mono):
            assert -sum(out) == d2 + k2


def test_h_half_pairing_from_level():
    assert H_HALF_PAIRING == -1


def test_h_bracket_example():
    mod = Sl2ThetaModule(TwistedCharacter.lam(h))
    v = FockVector.vacuum(TENSOR)
    lhs = mod.h(h, mod.h(-h, v)) - mod.h(-h, mod.h(h, v))
    assert lhs == v * -2


def test_x_plus_zero_kills_vacuum_at_half():
    for i in (1, 2):
        for j in (1, 2):
            mod = Sl2ThetaModule(TwistedCharacter.lam(h), i, j)
            assert not mod.x_plus(0, mod.vacuum())


def test_large_modes_annihilate():
    mod = Sl2ThetaModule(TwistedCharacter.lam(Fraction(1, 3)))
    v = FockVector.monomial(TENSOR, ((-1,), (-1,)))
    assert not mod.x_plus(3, v)
    assert not mod.x_minus(Fraction(5, 2), v)


@pytest.mark.parametrize("chi", [TwistedCharacter.lam(Fraction(1, 3)),
                                 TwistedCharacter.from_map({Fraction(-1, 2): 1, 0: 2})])
def test_x_minus_two_constructions_agree(chi):
    mod = Sl2ThetaModule(chi, 2, 1)
    vecs = [FockVector.monomial(TENSOR, m) for m in FockSpace(TENSOR).basis_upto2(3)]
    for e2 in range(-5, 2):
        for v in vecs:
            assert mod.X_minus(HalfInt.from_doubled(e2), v) == _x_minus_alternative(mod, HalfInt.from_doubled(e2), v)


@pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_sl2_relations_small(i, j):
    chi = TwistedCharacter.from_map({0: Fraction(1, 3), Fraction(-1, 2): 1, -1: 2})
    rep = verify_sl2_theta(chi, i, j, cutoff=2, mode_bound=1)
    assert rep["relations_checked"] > 0 and not rep["violations"]


@pytest.mark.parametrize("lam,i,j,c0,c1", [
    (h, 1, 1, -1, -1), (h, 2, 1, -1, -1),
    (0, 1, 1, -2, 0), (0, 2, 2, -2, 0), (0, 1, 2, 0, -2),
    (Fraction(1, 3), 1, 1, Fraction(-4, 3), Fraction(-2, 3)),
    (Fraction(1, 3), 2, 1, Fraction(-2, 3), Fraction(-4, 3)),
])
def test_highest_weights(lam, i, j, c0, c1):
    w = highest_weight_data(TwistedCharacter.lam(lam), i, j, submodule=(lam == 0))
    assert (w.c0, w.c1) == (c0, c1)
    assert w.level == -2


@given(st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)), st.sampled_from([1, 2]),
       st.sampled_from([1, 2]))
@settings(max_examples=20)
def test_weight_formula_for_any_lambda(lam, i, j):
    w = highest_weight_data(TwistedCharacter.lam(lam), i, j)
    if i == j:
        assert (w.c0, w.c1) == (2 * lam - 2, -2 * lam)
    else:
        assert (w.c0, w.c1) == (-2 * lam, 2 * lam - 2)


def test_highest_weight_needs_lambda_over_z():
    with pytest.raises(ValueError):
        highest_weight_data(TwistedCharacter.from_map({-1: 1}))


def test_weight_json():
    assert Weight.from_j(0).to_json() == {"Lambda0": "-1", "Lambda1": "-1"}


def test_vacuum_space_examples():
    rep = vacuum_space(TwistedCharacter.lam(h), cutoff=2)
    assert rep["dims"]["0"] == 1 and rep["dims"]["1/2"] == 1
    (vec,) = rep["basis"]["1/2"]
    assert set(vec.terms) == {((-1,), ())}


@pytest.mark.parametrize("j", [1, 2])
def test_a_plus_is_constant_times_g(j):
    rep = omega_preservation(TwistedCharacter.lam(Fraction(1, 3)), 1, j, cutoff=2, mode_bound=1)
    assert not rep["failures"]
    assert a_plus_constant(j) == -(SQRT2 * I) * (-1) ** j


def test_a_plus_lowest_mode_on_vacuum():
    ap = APlusModes(TwistedCharacter.lam(Fraction(1, 3)))
    w = ap.mode(-h, ap.mod.vacuum())
    assert set(w.terms) == {((-1,), ())}


def test_a_plus_rejects_positive_t():
    with pytest.raises(ValueError):
        APlusModes(TwistedCharacter.from_map({h: 1}))


def test_cyclic_span_tensor():
    assert tensor_cyclic_span(TwistedCharacter.lam(Fraction(1, 3)), 1, 1, 2)["full"]
    assert not tensor_cyclic_span(TwistedCharacter.lam(0), 1, 1, 2)["full"]
