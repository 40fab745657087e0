import pytest

from mforge.composition import center
from mforge.scalars import F2, F4, QI, QQ
from mforge.unitary import (SIGMA_GALOIS, SIGMA_IDENTITY, SIGMA_STANDARD,
                            IndifferentSet, InvolutorySet,
                            double_opposite_matches_squares, ind_check,
                            ind_opposite, inv_check)


def test_hamilton_involutory_set(quaternions):
    s = InvolutorySet(quaternions, SIGMA_STANDARD)
    rep = inv_check(s)
    assert rep.passed
    assert rep.proper is False
    assert rep.quad_type == "iv"


def test_octonion_involutory_type_v(octonions):
    s = InvolutorySet(octonions, SIGMA_STANDARD)
    assert inv_check(s).quad_type == "v"


def test_gaussian_galois_type_iii():
    rep = inv_check(InvolutorySet(QI, SIGMA_GALOIS))
    assert rep.passed and rep.quad_type == "iii"


def test_rationals_identity_type_ii():
    rep = inv_check(InvolutorySet(QQ, SIGMA_IDENTITY))
    assert rep.passed and rep.quad_type == "ii"


def test_f4_galois():
    rep = inv_check(InvolutorySet(F4, SIGMA_GALOIS))
    assert rep.passed and rep.quad_type == "iii"


def test_type_iv_forces_center(quaternions):
    s = InvolutorySet(quaternions, SIGMA_STANDARD)
    rep = inv_check(s)
    assert rep.quad_type == "iv"
    ctr = center(quaternions)
    assert ctr.dim == s.k0.dim == 1


def test_bigger_k0_is_not_quadratic_type(quaternions):
    s = InvolutorySet(quaternions, SIGMA_STANDARD,
                      k0_gens=[quaternions.one(), quaternions.unit(1)])
    rep = inv_check(s)
    # traces land in Q, but K0 contains i which is moved by sigma
    assert not rep.line("axiom.k0-fixed-by-sigma").passed


def test_galois_needs_extension():
    with pytest.raises(ValueError):
        InvolutorySet(QQ, SIGMA_GALOIS)


def test_trivial_indifferent_set():
    ind = IndifferentSet(F2, [F2.one()], [F2.one()])
    rep = ind_check(ind)
    assert rep.passed and rep.proper is False
    assert ind_opposite(ind).k0.dim == 1


def test_full_f4_indifferent_set():
    w = F4.gen()
    ind = IndifferentSet(F4, [F4.one(), w], [F4.one(), w])
    rep = ind_check(ind)
    assert rep.passed
    assert rep.proper is False  # K0 exhausts the field


def test_opposite_generators_are_squares():
    w = F4.gen()
    ind = IndifferentSet(F4, [F4.one(), w], [F4.one()])
    opp = ind_opposite(ind)
    assert opp.k0.dim == 1          # <L0> basis
    assert opp.l0.dim == 2          # span of squares of {1, w}
    assert opp.l0.contains(w * w)
    assert double_opposite_matches_squares(ind)


def test_indifferent_requires_char2():
    with pytest.raises(ValueError):
        IndifferentSet(QQ, [QQ.one()], [QQ.one()])


def test_indifferent_requires_one():
    w = F4.gen()
    with pytest.raises(ValueError):
        IndifferentSet(F4, [w], [F4.one()])


def test_proper_opposite_of_proper():
    # no proper instance is representable over the shipped scalar kernel
    # (that needs an imperfect infinite field); the law is exercised on
    # the representable fragments by checking the implication vacuously
    # and the double-opposite square identity above
    ind = IndifferentSet(F2, [F2.one()], [F2.one()])
    rep = ind_check(ind)
    if rep.proper:  # pragma: no cover - not reachable with shipped scalars
        assert ind_check(ind_opposite(ind)).proper
