import random

import pytest

from mforge.quadspace import (DimensionTooLarge, QuadraticSpace, ZeroAnchor,
                              qs_defect, qs_eval, qs_hua,
                              qs_small_dim_field, space_from_algebra,
                              space_from_quadext, verify_space)
from mforge.scalars import F2, F4, QI, QQ


@pytest.fixture(scope="module")
def f4_space():
    return space_from_quadext(F4, name="(F4,F2,N)")


def test_eval_basepoint(f4_space):
    q, t, s = qs_eval(f4_space, f4_space.basepoint)
    assert q == F2.one()
    assert t == F2.zero()  # f(eps, eps) = 2 q(eps) = 0 in char 2
    assert s == f4_space.basepoint


def test_eval_basepoint_char0():
    sp = QuadraticSpace(QQ, [1], {}, [1], anisotropy="attested")
    q, t, s = qs_eval(sp, sp.basepoint)
    assert q == QQ.one() and t == QQ.scalar(2) and s == sp.basepoint


def test_eval_zero(f4_space):
    zero = f4_space.zero()
    q, t, s = qs_eval(f4_space, zero)
    assert q.is_zero() and t.is_zero() and s.is_zero()


def test_eval_generator(f4_space):
    w = f4_space.vector([0, 1])
    q, t, s = qs_eval(f4_space, w)
    assert q == F2.one() and t == F2.one()
    assert s == f4_space.vector([1, 1])  # w^2


def test_hua_generator(f4_space):
    w = f4_space.vector([0, 1])
    one = f4_space.vector([1, 0])
    assert qs_hua(f4_space, w, one) == f4_space.vector([1, 1])


def test_hua_basepoint_is_identity(f4_space):
    for v in f4_space.enumerate_vectors():
        assert qs_hua(f4_space, f4_space.basepoint, v) == v


def test_hua_rejects_zero_anchor(f4_space):
    with pytest.raises(ZeroAnchor):
        qs_hua(f4_space, f4_space.zero(), f4_space.basepoint)


def test_hua_anchor_scaling_rule():
    sp = space_from_quadext(QI, name="(Q(i),Q,N)")
    rng = random.Random(2)
    from mforge.scalars import random_scalar
    for _ in range(40):
        a = sp.random_vector(rng, 9, nonzero=True)
        x = sp.random_vector(rng, 9)
        s = random_scalar(QQ, rng, 9, nonzero=True)
        assert qs_hua(sp, a.scale(s), x) == qs_hua(sp, a, x).scale(s * s)


def test_defect(f4_space):
    rad, proper = qs_defect(f4_space)
    assert rad == [] and proper


def test_defect_degenerate_char2():
    # over a perfect field the only anisotropic form with identically zero
    # polar form is the squaring form on a line: whole space defective
    sp = QuadraticSpace(F2, [1], {}, [1])
    rad, proper = qs_defect(sp)
    assert len(rad) == 1 and not proper


def test_char2_dim2_zero_polar_form_is_isotropic():
    # x^2 + y^2 = (x + y)^2 vanishes at (1, 1): the exhaustive anisotropy
    # check must refuse the construction
    with pytest.raises(ValueError):
        QuadraticSpace(F2, [1, 1], {}, [1, 0])


def test_defect_dim1_char0():
    sp = QuadraticSpace(QQ, [1], {}, [1], anisotropy="attested")
    rad, proper = qs_defect(sp)
    assert rad == [] and proper


def test_anisotropy_guard():
    # x^2 - y^2 is isotropic at (1, 1)
    with pytest.raises(ValueError):
        QuadraticSpace(QQ, [1, -1], {}, [1, 0], anisotropy="attested")


def test_small_dim_field_f4(f4_space):
    fld, phi = qs_small_dim_field(f4_space)
    assert fld.type_tag == "iii"
    # multiplicative group of the constructed 4-element field has order 3
    w = f4_space.vector([0, 1])
    w2 = fld.mul(w, w)
    w3 = fld.mul(w2, w)
    assert w3 == fld.one()


def test_small_dim_field_gaussian():
    sp = space_from_quadext(QI)
    fld, _ = qs_small_dim_field(sp)
    assert fld.type_tag == "iii"
    i = sp.vector([0, 1])
    assert fld.mul(i, i) == sp.basepoint.scale(QQ.scalar(-1))


def test_small_dim_field_dim1():
    sp = QuadraticSpace(QQ, [1], {}, [1], anisotropy="attested")
    fld, phi = qs_small_dim_field(sp)
    assert fld.type_tag == "ii"
    assert fld.mul(phi(QQ.scalar(2)), phi(QQ.scalar(3))) == phi(QQ.scalar(6))


def test_small_dim_field_rejects_dim3(quaternions):
    sp = space_from_algebra(quaternions)
    with pytest.raises(DimensionTooLarge):
        qs_small_dim_field(sp)


def test_structural_laws(f4_space, quaternions):
    assert verify_space(f4_space, samples=60).passed
    assert verify_space(space_from_algebra(quaternions), samples=40).passed
    assert verify_space(space_from_quadext(QI), samples=60).passed


def test_octonion_norm_space(octonions):
    sp = space_from_algebra(octonions)
    assert sp.anisotropy == "structural"
    assert sp.proper()
    rng = random.Random(7)
    for _ in range(15):
        v = sp.random_vector(rng, 6)
        x = octonions.element([c for c in v.coords])
        assert sp.q(v) == x.norm()
