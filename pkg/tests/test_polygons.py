import random

import pytest

from mforge.handles import as_handle
from mforge.polygons import (OPPOSITE, STANDARD, SYMBOL_QD, SYMBOL_QE,
                             SYMBOL_QI, IndexOutOfRange, PolygonDescriptor,
                             WordGroup, ZeroParameter, qp_xi_f4,
                             qq_f4_space, rgs_commutator, rgs_hua_consistency,
                             rgs_hua_end_action, rgs_multiply, rgs_opposite,
                             triangle)
from mforge.scalars import F4, F5, F2
from mforge.unitary import (SIGMA_GALOIS, SIGMA_STANDARD, IndifferentSet,
                            InvolutorySet)


@pytest.fixture(scope="module")
def tri_oct(octonions):
    return triangle(octonions, name="T(O)")


@pytest.fixture(scope="module")
def qq_desc():
    return qq_f4_space()


@pytest.fixture(scope="module")
def qp_desc():
    return qp_xi_f4()


def test_triangle_commutator(tri_oct, octonions):
    s = octonions.element([1, 2, 0, 0, 0, 0, 0, 0])
    t = octonions.element([0, 1, 1, 0, 0, 0, 0, 0])
    w = rgs_commutator(tri_oct, 1, s, 3, t)
    assert w.factors == [(2, s * t)]
    assert rgs_commutator(tri_oct, 1, octonions.zero(), 3, t).is_identity()
    assert rgs_commutator(tri_oct, 1, s, 2, t).is_identity()


def test_commutator_index_guard(tri_oct, octonions):
    with pytest.raises(IndexOutOfRange):
        rgs_commutator(tri_oct, 3, octonions.one(), 1, octonions.one())


def test_collection_forces_middle_entry(tri_oct, octonions):
    s = octonions.element([1, 2, 0, 0, 0, 0, 0, 0])
    t = octonions.element([0, 1, 1, 0, 0, 0, 0, 0])
    w = rgs_multiply(tri_oct.word([(3, t)]), tri_oct.word([(1, s)]))
    assert [i for i, _ in w.factors] == [1, 2, 3]
    assert w.slot(2) == -(s * t)


def test_word_identity_and_inverse(tri_oct, octonions):
    rng = random.Random(1)
    for _ in range(15):
        factors = [(i, octonions.random_element(rng, 5)) for i in (1, 2, 3)]
        w = tri_oct.word(factors)
        assert rgs_multiply(w, tri_oct.identity_word()) == w
        assert rgs_multiply(w, w.inverse()).is_identity()


def test_qq_word_group_exhaustive(qq_desc):
    wg = WordGroup(qq_desc)
    assert len(wg.elements) == 64
    rep = wg.check_axioms()
    assert rep.passed, repr(rep)


def test_qq_commutator_example(qq_desc):
    sp = qq_desc.params
    t = sp.field.one()
    a = sp.vector([0, 1])
    w = rgs_commutator(qq_desc, 1, t, 4, a)
    # x2 part is (-a)t = at in characteristic 2; x3 part is t q(a)
    assert w.slot(2) == a.scale(t)
    assert w.slot(3) == sp.q(a) * t


def test_qp_word_group_exhaustive(qp_desc):
    wg = WordGroup(qp_desc)
    assert len(wg.elements) == 1024
    rep = wg.check_axioms()
    assert rep.passed, repr(rep)


def test_random_associativity_infinite(tri_oct, octonions):
    rng = random.Random(2)
    for _ in range(25):
        words = [tri_oct.word([(i, octonions.random_element(rng, 4))
                               for i in (1, 2, 3)]) for _ in range(3)]
        a, b, c = words
        assert rgs_multiply(rgs_multiply(a, b), c) == \
            rgs_multiply(a, rgs_multiply(b, c))


def test_commutator_inverse_law(qq_desc):
    # [u, v]^-1 = [v, u] on generator pairs, via both normal forms
    sp = qq_desc.params
    for t in sp.field.elements():
        for a in sp.enumerate_vectors():
            w = rgs_commutator(qq_desc, 1, t, 4, a)
            lhs = w.inverse()
            x1 = qq_desc.word([(1, t)])
            x4 = qq_desc.word([(4, a)])
            rhs = (x4.inverse() * x1.inverse()) * (x4 * x1)
            assert lhs == rhs


def test_opposite_round_trip(tri_oct, qq_desc, qp_desc):
    for d in (tri_oct, qq_desc, qp_desc):
        opp = rgs_opposite(d)
        assert opp.orientation == OPPOSITE
        back = rgs_opposite(opp)
        assert back.orientation == STANDARD
        assert back.params is d.params


def test_opposite_triangle_relation_sign(tri_oct, octonions):
    opp = rgs_opposite(tri_oct)
    h = as_handle(octonions)
    rng = random.Random(3)
    for _ in range(15):
        s = octonions.random_element(rng, 5)
        t = octonions.random_element(rng, 5)
        w = rgs_commutator(opp, 1, s, 3, t)
        # reversed reading: x2 entry is -(t s), the opposite product of s, t
        assert w.slot(2) == -(t * s)


def test_opposite_qi_matches_literal_table():
    iv = InvolutorySet(F4, SIGMA_GALOIS)
    d = PolygonDescriptor(SYMBOL_QI, iv)
    do = rgs_opposite(d)
    h = iv.handle
    sig = iv.sigma
    for s in F4.elements():
        for t in F4.elements():
            # quoted form: [x1(s)^-1, x3(t)] = x2(-s t^sig - t s^sig);
            # plain arguments substitute s -> -s
            sn = h.neg(s)
            lit = h.neg(h.add(h.mul(sn, sig(t)), h.mul(t, sig(sn))))
            assert rgs_commutator(do, 1, s, 3, t).slot(2) == lit
        for u in iv.k0.elements():
            # quoted form: [x1(s)^-1, x4(u)] = x2(-s u s^sig) x3(-s u)
            for s in F4.elements():
                sn = h.neg(s)
                w = rgs_commutator(do, 1, s, 4, u)
                assert w.slot(2) == h.neg(h.mul(h.mul(sn, u), sig(sn)))
                assert w.slot(3) == h.neg(h.mul(sn, u))


def test_opposite_qp_matches_literal_table(qp_desc):
    # literal opposite forms, with left-space products realized over the
    # right space (scalar action s*b = b.s, ring product s*t = t.s) and
    # inverted-argument slots rewritten by parameter-group inversion
    sp = qp_desc.params
    do = rgs_opposite(qp_desc)
    h = sp.h
    sig = sp.inv.sigma
    pts = list(sp.enumerate_t())
    scalars = [s for s in h.elements()]

    # [x2(b,u)^-1, x4(a,t)] = x3(-f(a,b))
    for bu in pts:
        for at in pts:
            binv = bu.inverse()
            w = rgs_commutator(do, 2, binv, 4, at)
            expect = h.neg(sp.f(at.a, bu.a))
            got = w.slot(3)
            if h.is_zero(expect):
                assert do.group(3).is_identity(got)
            else:
                assert got == expect

    # [x1(w)^-1, x3(v)] = x2(0, -w v^sig - v w^sig)
    for wv in scalars:
        for v in scalars:
            word = rgs_commutator(do, 1, h.neg(wv), 3, v)
            val = h.neg(h.add(h.mul(sig(v), wv), h.mul(sig(wv), v)))
            got = word.slot(2)
            assert sp.vec_is_zero(got.a) if hasattr(got, "a") else True
            if h.is_zero(val):
                assert do.group(2).is_identity(got)
            else:
                assert got.t == val

    # [x1(v)^-1, x4(a,t)] = x2(-v.a, -v^sig t^sig v) x3(-v t)
    for v in scalars:
        if h.is_zero(v):
            continue
        for at in pts:
            word = rgs_commutator(do, 1, h.neg(v), 4, at)
            a, t = at.a, at.t
            exp2_a = sp.vec_neg(sp.vec_scale(a, v))
            exp2_t = h.neg(h.mul(h.mul(v, sig(t)), sig(v)))
            exp3 = h.neg(h.mul(t, v))
            got2 = word.slot(2)
            assert got2.a == exp2_a and got2.t == exp2_t
            assert word.slot(3) == exp3


def test_opposite_qd_matches_literal_table():
    ind = IndifferentSet(F2, [F2.one()], [F2.one()])
    d = PolygonDescriptor(SYMBOL_QD, ind)
    do = rgs_opposite(d)
    h = ind.handle
    for a in ind.l0.elements():
        for t in ind.k0.elements():
            # quoted form: [x1(a), x4(t)] = x2(t a) x3(t^2 a)
            w = rgs_commutator(do, 1, a, 4, t)
            assert w.slot(2) == h.mul(t, a)
            assert w.slot(3) == h.mul(h.mul(t, t), a)


def test_finite_word_groups_other_families():
    iv = InvolutorySet(F4, SIGMA_GALOIS)
    d = PolygonDescriptor(SYMBOL_QI, iv)
    assert WordGroup(d).check_axioms().passed
    assert WordGroup(rgs_opposite(d)).check_axioms().passed
    ind = IndifferentSet(F2, [F2.one()], [F2.one()])
    dqd = PolygonDescriptor(SYMBOL_QD, ind)
    assert WordGroup(dqd).check_axioms().passed


def test_triangle_f5_exhaustive():
    d = triangle(F5, name="T(F5)")
    wg = WordGroup(d)
    assert len(wg.elements) == 125
    assert wg.check_axioms().passed
    assert rgs_hua_consistency(d).passed


def test_hua_end_actions_unit_is_identity(tri_oct, qq_desc, qp_desc,
                                          octonions):
    m1, m3 = rgs_hua_end_action(tri_oct, "first", octonions.one())
    rng = random.Random(4)
    for _ in range(10):
        x = octonions.random_element(rng, 5)
        assert m1(x) == x and m3(x) == x
    sp = qq_desc.params
    m1, m4 = rgs_hua_end_action(qq_desc, "last", sp.basepoint)
    for t in sp.field.elements():
        assert m1(t) == t
    for b in sp.enumerate_vectors():
        assert m4(b) == b


def test_hua_end_action_formulas(tri_oct, octonions):
    rng = random.Random(5)
    for _ in range(10):
        s = octonions.random_element(rng, 5, nonzero=True)
        t = octonions.random_element(rng, 5)
        u = octonions.random_element(rng, 5)
        m1, m3 = rgs_hua_end_action(tri_oct, "first", s)
        assert m1(t) == (s * t) * s or m1(t) == s * (t * s)
        assert m3(u) == s.inverse() * u
        m1b, m3b = rgs_hua_end_action(tri_oct, "last", s)
        assert m1b(t) == t * s.inverse()
        assert m3b(u) == s * (u * s) or m3b(u) == (s * u) * s


def test_hua_end_action_zero_guard(tri_oct, octonions):
    with pytest.raises(ZeroParameter):
        rgs_hua_end_action(tri_oct, "first", octonions.zero())


def test_qq_opposite_last_action_matches_quoted_form(qq_desc):
    do = rgs_opposite(qq_desc)
    sp = do.params
    for t in sp.field.elements():
        if t.is_zero():
            continue
        mb, mu = rgs_hua_end_action(do, "last", t)
        for b in sp.enumerate_vectors():
            assert mb(b) == b.scale(t.inv())
        for u in sp.field.elements():
            assert mu(u) == t * t * u


def test_qp_first_end_is_the_group_hua(qp_desc):
    from mforge.pseudoquad import t_hua
    sp = qp_desc.params
    pts = list(sp.enumerate_t())
    for anchor in pts:
        if anchor.is_identity():
            continue
        m1, m4 = rgs_hua_end_action(qp_desc, "first", anchor)
        for p in pts:
            assert m1(p) == t_hua(anchor, p)


def test_hua_consistency_triangle_sampled(tri_oct):
    rep = rgs_hua_consistency(tri_oct, samples=60, seed=6)
    assert rep.passed, repr(rep)


def test_hua_consistency_finite_exhaustive(qq_desc):
    rep = rgs_hua_consistency(qq_desc)
    assert rep.passed, repr(rep)


def test_hua_consistency_infinite_quadrangle(quaternions):
    iv = InvolutorySet(quaternions, SIGMA_STANDARD)
    d = PolygonDescriptor(SYMBOL_QI, iv)
    rep = rgs_hua_consistency(d, samples=60, seed=7)
    assert rep.passed, repr(rep)


def test_reparametrized_relation_table(tri_oct, octonions):
    # a reparametrization by a ring automorphism preserves the table shape
    w = octonions.one() + octonions.unit(1)
    conj = lambda x: (w.inverse() * x) * w
    rng = random.Random(8)
    for _ in range(15):
        s = octonions.random_element(rng, 5)
        t = octonions.random_element(rng, 5)
        lhs = rgs_commutator(tri_oct, 1, conj(s), 3, conj(t)).slot(2)
        assert lhs == conj(s) * conj(t)


def test_rejection_symbols_carry_no_relations():
    d = PolygonDescriptor(SYMBOL_QE, "tag")
    with pytest.raises(ValueError):
        d.group(1)
