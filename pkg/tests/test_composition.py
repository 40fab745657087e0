import random

import pytest

from mforge.composition import (CDAlgebra, NotInvertible, Subspace,
                                bilinear, cd_conj_norm_trace,
                                doubling_coordinates, center,
                                norm_splitting, octonions_q,
                                orthogonal_complement,
                                sedenion_style_q, subalgebra_generated,
                                verify_identities)
from mforge.scalars import F3, QQ

# basis products of the default octonion tower, frozen from the doubling
# recursion (signed one-based indices)
GOLDEN_OCTONION_TABLE = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, -4, 3, -6, 5, 8, -7],
    [3, 4, -1, -2, -7, -8, 5, 6],
    [4, -3, 2, -1, -8, 7, -6, 5],
    [5, 6, 7, 8, -1, -2, -3, -4],
    [6, -5, 8, -7, 2, -1, 4, -3],
    [7, -8, -5, 6, 3, -4, -1, 2],
    [8, 7, -6, -5, 4, 3, -2, -1],
]


def test_unit_law(octonions):
    rng = random.Random(0)
    one = octonions.one()
    for _ in range(20):
        x = octonions.random_element(rng, 9)
        assert one * x == x and x * one == x


def test_quaternion_signs(quaternions):
    i, j = quaternions.unit(1), quaternions.unit(2)
    k = i * j
    assert i * i == -quaternions.one()
    assert j * i == -k


def test_golden_basis_table(octonions):
    bas = octonions.basis()
    for i in range(8):
        for j in range(8):
            expect = GOLDEN_OCTONION_TABLE[i][j]
            got = bas[i] * bas[j]
            want = bas[abs(expect) - 1]
            assert got == (want if expect > 0 else -want)


def test_conj_norm_trace(octonions, quaternions):
    e = octonions.unit(4)
    conj, n, t = cd_conj_norm_trace(e)
    assert conj == -e and n == QQ.one() and t == QQ.zero()
    x = quaternions.element([3, 1, 0, 0])
    conj, n, t = cd_conj_norm_trace(x)
    assert conj == quaternions.element([3, -1, 0, 0])
    assert n == QQ.scalar(10) and t == QQ.scalar(6)
    one = octonions.one()
    assert cd_conj_norm_trace(one) == (one, QQ.one(), QQ.scalar(2))


def test_norm_agrees_with_conj_product(octonions):
    rng = random.Random(1)
    for _ in range(25):
        x = octonions.random_element(rng, 9)
        prod = x * x.conj()
        assert prod.coords[0] == x.norm()
        assert all(c.is_zero() for c in prod.coords[1:])


def test_inverse(quaternions):
    i = quaternions.unit(1)
    assert i.inverse() == -i
    assert quaternions.one().inverse() == quaternions.one()
    with pytest.raises(NotInvertible):
        quaternions.zero().inverse()
    rng = random.Random(2)
    for _ in range(20):
        x = quaternions.random_element(rng, 9, nonzero=True)
        assert x * x.inverse() == quaternions.one()
        assert x.inverse() * x == quaternions.one()


def test_center_dims(octonions, quaternions):
    assert center(quaternions).dim == 1
    assert center(octonions).dim == 1
    line = CDAlgebra(QQ, [])
    assert center(line).dim == 1
    stage = CDAlgebra(QQ, [-1])
    assert center(stage).dim == 2


def test_subalgebra_generated(octonions):
    assert subalgebra_generated(octonions, []).dim == 1
    assert subalgebra_generated(octonions, [octonions.unit(1)]).dim == 2
    four = subalgebra_generated(octonions,
                                [octonions.unit(1), octonions.unit(2)])
    assert four.dim == 4
    assert four.is_subalgebra()


def test_orthogonal_complement(octonions, quaternions):
    whole = Subspace(octonions, octonions.basis())
    assert orthogonal_complement(octonions, whole).dim == 0
    span1 = Subspace(quaternions, [quaternions.one()])
    perp = orthogonal_complement(quaternions, span1)
    assert perp.dim == 3
    assert not perp.contains(quaternions.one())
    zero = Subspace(octonions, [])
    assert orthogonal_complement(octonions, zero).dim == 8


def test_doubling_coordinates(octonions):
    quat = Subspace(octonions, octonions.basis()[:4])
    e = octonions.unit(4)
    x = octonions.unit(4 + 1)  # e * i
    h, y = doubling_coordinates(x, quat, e)
    assert h.is_zero() and y == octonions.unit(1)
    h, y = doubling_coordinates(e, quat, e)
    assert h.is_zero() and y == octonions.one()
    inside = octonions.element([1, 2, 3, 4, 0, 0, 0, 0])
    h, y = doubling_coordinates(inside, quat, e)
    assert h == inside and y.is_zero()


def test_doubling_round_trip(octonions):
    quat = Subspace(octonions, octonions.basis()[:4])
    e = octonions.unit(4)
    rng = random.Random(3)
    from mforge.composition import DoublingFrame
    frame = DoublingFrame(octonions, quat, e)
    for _ in range(20):
        x = octonions.random_element(rng, 9)
        h, y = frame.split(x)
        assert quat.contains(h) and quat.contains(y)
        assert frame.combine(h, y) == x


def test_doubling_errors(octonions):
    from mforge.composition import NotInSpan
    from mforge.composition import BadDoublingUnit
    pair = Subspace(octonions, [octonions.one(), octonions.unit(1)])
    e2 = octonions.unit(2)
    # span{1, i} + j*span{1, i} misses the top half
    with pytest.raises(NotInSpan):
        doubling_coordinates(octonions.unit(4), pair, e2)
    # the doubling unit must leave the subalgebra
    with pytest.raises(BadDoublingUnit):
        doubling_coordinates(octonions.unit(4), pair, octonions.unit(1))
    # and must be orthogonal to it
    with pytest.raises(BadDoublingUnit):
        doubling_coordinates(octonions.unit(4), pair,
                             octonions.one() + octonions.unit(2))


def test_norm_splitting(octonions):
    sub = Subspace(octonions, [octonions.one(), octonions.unit(1)])
    vs, consts, witness = norm_splitting(octonions, sub, samples=16)
    assert consts[0] == QQ.one()
    assert all(not s.is_zero() for s in consts)
    prod = consts[0] * consts[1] * consts[2] * consts[3]
    assert witness.norm() == prod
    assert sub.contains(witness)


def test_division_status():
    assert octonions_q().division_status == "certified-structural"
    f9 = CDAlgebra(F3, [-1])
    assert f9.division_status == "certified-exhaustive"
    # over a finite field the 4-dim norm form is isotropic
    iso = CDAlgebra(F3, [-1, -1])
    assert iso.division_status == "not-division"
    # user-supplied rational betas with a positive sign are only sampled
    mixed = CDAlgebra(QQ, [2])
    assert mixed.division_status in ("division-unverified-sampled",
                                     "not-division")


def test_dim16_needs_flag():
    with pytest.raises(ValueError):
        CDAlgebra(QQ, [-1, -1, -1, -1])
    sed = sedenion_style_q()
    assert sed.dim == 16


@pytest.mark.parametrize("suite", ["moufang", "flexible", "alternative",
                                   "inverse", "minimum_equation",
                                   "norm_multiplicative", "doubling_rules"])
def test_identity_suites_pass_on_octonions(octonions, suite):
    rep = verify_identities(octonions, suite, samples=60, seed=11)
    assert rep.passed, repr(rep)


def test_identity_suites_pass_on_quaternions(quaternions):
    for suite in ("moufang", "alternative", "doubling_rules"):
        assert verify_identities(quaternions, suite, samples=80,
                                 seed=7).passed


def test_dim16_fails_alternativity():
    rep = verify_identities(sedenion_style_q(), "alternative", samples=400,
                            seed=3)
    assert not rep.passed
    failing = [ln for ln in rep.lines if not ln.passed]
    assert failing and failing[0].counterexample is not None


def test_doubling_rules_skip_on_line():
    line = CDAlgebra(QQ, [])
    rep = verify_identities(line, "doubling_rules", samples=10, seed=1)
    assert rep.passed
    assert any(ln.note and "skip" in ln.note for ln in rep.lines)


def test_bilinear_is_trace_pairing(octonions):
    rng = random.Random(4)
    for _ in range(20):
        x = octonions.random_element(rng, 9)
        assert bilinear(x, octonions.one()) == x.trace()


def test_char2_tower_quadratic_stage():
    ext = CDAlgebra(F3, [-1])
    rng = random.Random(5)
    for _ in range(30):
        x = ext.random_element(rng)
        y = ext.random_element(rng)
        assert (x * y).norm() == x.norm() * y.norm()
