"""Pseudo-quadratic spaces, their group T, Hua maps, Jordan-isomorphism
checking, the complete census over the 4-element field, and the dimension
switch between quaternion 1-dim and quadratic-extension 2-dim spaces.

q is stored as chosen representatives on a basis; all statements involving
q are congruences against the K0 span.
"""

from __future__ import annotations

import itertools
import random

from . import linalg
from .composition import DoublingFrame, Subspace, orthogonal_complement
from .handles import CDHandle, FieldHandle, as_handle
from .report import Report
from .scalars import F4, QuadExt, Scalar
from .tables import FiniteGroupTable
from .unitary import SIGMA_GALOIS, SIGMA_STANDARD, InvolutorySet


class SpaceMismatch(ValueError):
    pass


class ZeroAnchor(ZeroDivisionError):
    pass


class BadOrthogonalUnit(ValueError):
    pass


class BasisNotOrthogonal(ValueError):
    pass


class PseudoQuadraticSpace:
    """Right pseudo-quadratic space over an involutory set.

    q_rep[i] is the chosen representative of q(b_i); f_gram[i][j] = f(b_i,
    b_j).  The constructor validates the hermitian symmetry, the diagonal
    law f(a,a) = q(a) - q(a)^sigma and anisotropy (exhaustively when the
    carrier is finite, sampled otherwise) and refuses on failure.
    """

    def __init__(self, inv_set, q_rep, f_gram, name=None, samples=64, seed=9):
        self.inv = inv_set
        self.h = inv_set.handle
        self.q_rep = list(q_rep)
        self.f_gram = [list(row) for row in f_gram]
        self.dim = len(self.q_rep)
        self.name = name
        h = self.h
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = self.f_gram[j][i]
                rhs = h.neg(self.inv.sigma(self.f_gram[i][j]))
                if lhs != rhs:
                    raise ValueError("f is not skew-hermitian at (%d,%d)" % (i, j))
        for i in range(self.dim):
            d = h.sub(self.q_rep[i], self.inv.sigma(self.q_rep[i]))
            if self.f_gram[i][i] != d:
                raise ValueError("f(b,b) != q(b) - q(b)^sigma at %d" % i)
        self._validate(samples, seed)

    # vectors are tuples of K elements (right coordinates)
    def vector(self, xs):
        xs = tuple(xs)
        if len(xs) != self.dim:
            raise ValueError("expected %d coordinates" % self.dim)
        return xs

    def zero_vector(self):
        return tuple(self.h.zero() for _ in range(self.dim))

    def vec_add(self, a, b):
        return tuple(self.h.add(x, y) for x, y in zip(a, b))

    def vec_neg(self, a):
        return tuple(self.h.neg(x) for x in a)

    def vec_scale(self, a, t):
        # right scalar action
        return tuple(self.h.mul(x, t) for x in a)

    def vec_is_zero(self, a):
        return all(self.h.is_zero(x) for x in a)

    def f(self, a, b):
        h = self.h
        acc = h.zero()
        for i in range(self.dim):
            if h.is_zero(a[i]):
                continue
            for j in range(self.dim):
                if h.is_zero(b[j]):
                    continue
                term = h.mul(h.mul(self.inv.sigma(a[i]), self.f_gram[i][j]), b[j])
                acc = h.add(acc, term)
        return acc

    def q(self, a):
        """The chosen representative of q(a) mod K0."""
        h = self.h
        acc = h.zero()
        for i in range(self.dim):
            if h.is_zero(a[i]):
                continue
            acc = h.add(acc, h.mul(h.mul(self.inv.sigma(a[i]), self.q_rep[i]),
                                   a[i]))
            for j in range(i + 1, self.dim):
                if h.is_zero(a[j]):
                    continue
                acc = h.add(acc, h.mul(h.mul(self.inv.sigma(a[i]),
                                             self.f_gram[i][j]), a[j]))
        return acc

    def congruent(self, s, t):
        """s = t mod K0."""
        return self.inv.k0_contains(self.h.sub(s, t))

    def _validate(self, samples, seed):
        h = self.h
        if h.is_finite():
            vecs = list(self._all_vectors())
            pairs = [(a, b) for a in vecs for b in vecs]
        else:
            rng = random.Random(seed)
            vecs = [self.random_vector(rng) for _ in range(samples)]
            pairs = [(self.random_vector(rng), self.random_vector(rng))
                     for _ in range(samples)]
        for a, b in pairs:
            lhs = self.q(self.vec_add(a, b))
            rhs = h.add(h.add(self.q(a), self.q(b)), self.f(a, b))
            if not self.congruent(lhs, rhs):
                raise ValueError("(P1) fails")
        if h.is_finite():
            scalars = [(v, t) for v in vecs for t in h.elements()]
        else:
            rng2 = random.Random(seed + 1)
            scalars = [(self.random_vector(rng2), h.random(rng2, 9))
                       for _ in range(samples)]
        for a, t in scalars:
            lhs = self.q(self.vec_scale(a, t))
            rhs = h.mul(h.mul(self.inv.sigma(t), self.q(a)), t)
            if not self.congruent(lhs, rhs):
                raise ValueError("(P2) fails")
        for a in vecs:
            in_k0 = self.inv.k0_contains(self.q(a))
            if in_k0 != self.vec_is_zero(a):
                raise ValueError("(P3) anisotropy fails at %s" % (a,))

    def _all_vectors(self):
        pools = [self.h.elements() for _ in range(self.dim)]
        for combo in itertools.product(*pools):
            yield tuple(combo)

    def random_vector(self, rng, height=9):
        return tuple(self.h.random(rng, height) for _ in range(self.dim))

    # -- the group T -------------------------------------------------------
    def point(self, a, t):
        a, t = self.vector(a), t
        if not self.congruent(self.q(a), t):
            raise ValueError("q(a) - t is not in K0")
        return TPoint(self, a, t)

    def identity(self):
        return TPoint(self, self.zero_vector(), self.h.zero())

    def unit(self):
        return TPoint(self, self.zero_vector(), self.h.one())

    def enumerate_t(self):
        """All points of T (finite carrier, K0 enumerated as a span)."""
        k0_elems = self.inv.k0.elements()
        for a in self._all_vectors():
            qa = self.q(a)
            for k in k0_elems:
                yield TPoint(self, a, self.h.sub(qa, k))

    def random_point(self, rng, height=9):
        a = self.random_vector(rng, height)
        shift = self.inv.k0.sample(rng, height)
        return TPoint(self, a, self.h.add(self.q(a), shift))

    def __repr__(self):
        return self.name or "PQS(dim %d over %r)" % (self.dim, self.h)


class TPoint:
    __slots__ = ("space", "a", "t")

    def __init__(self, space, a, t):
        self.space = space
        self.a = a
        self.t = t

    def __mul__(self, other):
        if other.space is not self.space:
            raise SpaceMismatch("points of different spaces")
        sp = self.space
        h = sp.h
        return TPoint(sp, sp.vec_add(self.a, other.a),
                      h.add(h.add(self.t, other.t), sp.f(other.a, self.a)))

    def inverse(self):
        sp = self.space
        return TPoint(sp, sp.vec_neg(self.a),
                      sp.h.neg(sp.inv.sigma(self.t)))

    def is_identity(self):
        return self.space.vec_is_zero(self.a) and self.space.h.is_zero(self.t)

    def is_central(self):
        return self.space.vec_is_zero(self.a)

    def __eq__(self, other):
        return (isinstance(other, TPoint) and other.space is self.space
                and other.a == self.a and other.t == self.t)

    def __hash__(self):
        return hash(self.key())

    def key(self):
        h = self.space.h
        return (tuple(h.key(x) for x in self.a), h.key(self.t))

    def __repr__(self):
        return "(%s; %s)" % (", ".join(self.space.h.render(x) for x in self.a),
                             self.space.h.render(self.t))


def t_mul(x, y):
    return x * y


def t_inv(x):
    return x.inverse()


def t_hua(anchor, x):
    """Hua map of the anchor applied to x: (b t^s - a t^-1 f(a,b) t^s, t v t^s)."""
    if anchor.is_identity():
        raise ZeroAnchor("anchor must be nonzero")
    sp = anchor.space
    h = sp.h
    a, t = anchor.a, anchor.t
    b, v = x.a, x.t
    ts = sp.inv.sigma(t)
    tinv = h.inv(t)
    first = sp.vec_scale(b, ts)
    corr = sp.vec_scale(a, h.mul(h.mul(tinv, sp.f(a, b)), ts))
    first = sp.vec_add(first, sp.vec_neg(corr))
    second = h.mul(h.mul(t, v), ts)
    return TPoint(sp, first, second)


def t_group_table(space):
    """T as a FiniteGroupTable (finite carriers only)."""
    elems = list(space.enumerate_t())
    return FiniteGroupTable.from_ops(
        elems, lambda x, y: x * y, space.identity(), key=lambda p: p.key())


def t_jordan_check(gamma, src, dst, mode="sampled", samples=200, seed=17):
    """Group iso + unit preservation + Hua preservation for gamma: T -> T~.

    gamma is a callable on TPoints.  mode "exhaustive" enumerates finite
    carriers; "sampled" uses a seeded stream.
    """
    rep = Report("tpoints.jordan", seed=seed,
                 subject="%r -> %r" % (src, dst))
    if mode == "exhaustive":
        pts = list(src.enumerate_t())
        pairs = [(x, y) for x in pts for y in pts]
        anchors = [(x, y) for x in pts for y in pts if not x.is_identity()]
    else:
        rng = random.Random(seed)
        pts = [src.random_point(rng) for _ in range(samples)]
        pairs = [(src.random_point(rng), src.random_point(rng))
                 for _ in range(samples)]
        anchors = [(src.random_point(rng), src.random_point(rng))
                   for _ in range(samples)]

    ok, cex = True, None
    for x, y in pairs:
        if gamma(x * y) != gamma(x) * gamma(y):
            ok, cex = False, (repr(x), repr(y))
            break
    rep.add("jordan.group-homomorphism", len(pairs), ok, counterexample=cex)

    if mode == "exhaustive":
        images = {gamma(x).key() for x in pts}
        rep.add("jordan.bijective", len(pts), len(images) == len(pts))

    rep.add("jordan.unit", 1, gamma(src.unit()) == dst.unit())

    ok, cex = True, None
    for x, y in anchors:
        if x.is_identity():
            continue
        gx = gamma(x)
        if gx.is_identity():
            ok, cex = False, (repr(x), "image of anchor is zero")
            break
        if gamma(t_hua(x, y)) != t_hua(gx, gamma(y)):
            ok, cex = False, (repr(x), repr(y))
            break
    rep.add("jordan.hua-preserved", len(anchors), ok, counterexample=cex)
    return rep


# -- canonical instances ------------------------------------------------------

def xi_f4():
    """The pseudo-quadratic space over the 4-element field: K0 = F2,
    galois involution, dim 1, q(b) = w, f(b,b) = 1."""
    inv = InvolutorySet(F4, SIGMA_GALOIS, name="(F4,F2,gal)")
    w = F4.gen()
    return PseudoQuadraticSpace(inv, [w], [[F4.one()]], name="Xi_F4")


def xi_hamilton():
    """The 1-dim space over the rational quaternions: K0 = Q, sigma_s,
    q(b) = i, f(b,b) = 2i."""
    from .composition import quaternions_q
    H = quaternions_q()
    inv = InvolutorySet(H, SIGMA_STANDARD, name="(H,Q,sigma_s)")
    i = H.unit(1)
    return PseudoQuadraticSpace(inv, [i], [[i + i]], name="Xi_H")


# -- census over the 4-element field ------------------------------------------

def quaternion_group_table():
    """The 8-element quaternion unit group, built from the rational tower."""
    from .composition import quaternions_q
    H = quaternions_q()
    units = [H.one(), -H.one()]
    for k in (1, 2, 3):
        units += [H.unit(k), -H.unit(k)]
    return FiniteGroupTable.from_ops(units, lambda x, y: x * y, H.one(),
                                     key=lambda x: x.key())


def f4_census():
    """Order, explicit quaternion-group isomorphism, Hua triviality and the
    full automorphism census of T over the 4-element field."""
    sp = xi_f4()
    rep = Report("f4-census", subject=repr(sp))
    tbl = t_group_table(sp)
    rep.add("census.order", tbl.n, tbl.n == 8, note="|T| = %d" % tbl.n)

    axioms = tbl.check_axioms()
    rep.extend(axioms)

    iso = tbl.isomorphism_to(quaternion_group_table())
    rep.add("census.quaternion-group-iso", 1, iso is not None,
            note=None if iso is None else "index map " + str(list(map(int, iso))))

    # every Hua map is the identity
    pts = list(sp.enumerate_t())
    hua_trivial = all(t_hua(x, y) == y for x in pts if not x.is_identity()
                      for y in pts)
    rep.add("census.hua-all-identity", len(pts) ** 2, hua_trivial)

    autos = tbl.automorphisms()
    rep.add("census.automorphism-count", len(autos), len(autos) == 24,
            note="|Aut| = %d" % len(autos))

    unit_idx = next(i for i, p in enumerate(tbl.elements)
                    if p == sp.unit())
    fixes_unit = all(int(a[unit_idx]) == unit_idx for a in autos)
    rep.add("census.autos-fix-unit", len(autos), fixes_unit)

    # with trivial Hua maps, unit-fixing automorphisms are Jordan
    jordan = fixes_unit and hua_trivial
    rep.add("census.autos-are-jordan", len(autos), jordan)

    inner = []
    seen = set()
    for g in range(tbl.n):
        perm = tuple(int(v) for v in tbl.conjugation(g))
        if perm not in seen:
            seen.add(perm)
            inner.append(perm)
    rep.add("census.inner-count", len(inner), len(inner) == 4,
            note="|Inn| = %d" % len(inner))

    # the three sigma-twist maps are exactly the nontrivial inner autos
    twists = _sigma_twist_maps(sp, tbl)
    nontrivial_inner = {p for p in inner if p != tuple(range(tbl.n))}
    rep.add("census.twists-are-inner", len(twists),
            set(twists) == nontrivial_inner)

    # outer quotient: cosets of Inn inside Aut, should be S3
    cosets = _outer_cosets(tbl, autos, inner)
    rep.add("census.outer-count", len(cosets), len(cosets) == 6,
            note="|Aut/Inn| = %d" % len(cosets))
    rep.add("census.outer-is-s3", len(cosets), _is_s3(tbl, autos, inner))
    return rep


def _sigma_twist_maps(sp, tbl):
    """For each nonzero vector a0, the map fixing the fiber over a0 and
    conjugating t over the other nonzero vectors; returned as index
    permutations."""
    h = sp.h
    nonzero = [a for a in sp._all_vectors() if not sp.vec_is_zero(a)]
    index = {p.key(): i for i, p in enumerate(tbl.elements)}
    perms = []
    for a0 in nonzero:
        a0_key = tuple(h.key(x) for x in a0)
        perm = []
        for p in tbl.elements:
            akey = tuple(h.key(x) for x in p.a)
            if sp.vec_is_zero(p.a) or akey == a0_key:
                perm.append(index[p.key()])
            else:
                q = TPoint(sp, p.a, sp.inv.sigma(p.t))
                perm.append(index[q.key()])
        perms.append(tuple(perm))
    return perms


def _outer_cosets(tbl, autos, inner):
    inner_set = {tuple(p) for p in inner}
    cosets = []
    seen = set()
    for a in autos:
        a = tuple(int(v) for v in a)
        if a in seen:
            continue
        coset = set()
        for i in inner_set:
            comp = tuple(a[i[x]] for x in range(tbl.n))
            coset.add(comp)
        seen |= coset
        cosets.append(frozenset(coset))
    return cosets


def _is_s3(tbl, autos, inner):
    cosets = _outer_cosets(tbl, autos, inner)
    if len(cosets) != 6:
        return False
    idx = {c: k for k, c in enumerate(cosets)}

    def compose(p, q):
        return tuple(p[q[x]] for x in range(tbl.n))

    reps = [next(iter(c)) for c in cosets]
    table = [[idx[next(c for c in cosets if compose(a, b) in c)]
              for b in reps] for a in reps]
    # non-abelian of order 6 is S3
    return any(table[i][j] != table[j][i]
               for i in range(6) for j in range(6))


# -- dimension switches -------------------------------------------------------

def _quadratic_subfield(handle, x):
    """The subfield generated by 1 and x inside a quaternion tower, as an
    abstract quadratic extension plus embed/project maps."""
    alg = handle.algebra
    t0 = x.trace()
    n0 = x.norm()
    ext = QuadExt(alg.base, t0, n0, gen_name="u")
    sub = Subspace(alg, [alg.one(), x])

    def embed(s):
        # s = u0 + v0*gen  ->  1*u0 + x*v0
        u0 = Scalar(alg.base, s.val[0])
        v0 = Scalar(alg.base, s.val[1])
        return alg.one().scale(u0) + x.scale(v0)

    def project(y):
        # solve y = 1*u0 + x*v0 inside the tower
        sol = linalg.solve([[alg.one().coords[i], x.coords[i]]
                            for i in range(alg.dim)], list(y.coords))
        if sol is None:
            raise ValueError("element outside the subfield")
        return Scalar(ext, (sol[0].val, sol[1].val))

    return ext, sub, embed, project


def dim_switch_up(space, a_coeff=None, e=None):
    """1-dim space over a quaternion tower -> 2-dim space over the
    quadratic subfield generated by q(a), plus the point map between the
    two groups T.

    Returns (new_space, gamma) where gamma maps T(space) -> T(new).
    """
    if space.dim != 1:
        raise ValueError("dimension switch starts from a 1-dim space")
    h = space.h
    if not isinstance(h, CDHandle) or h.algebra.dim != 4:
        raise ValueError("carrier must be a quaternion tower (type iv)")
    alg = h.algebra
    a = alg.one() if a_coeff is None else a_coeff
    qa = h.mul(h.mul(h.conj(a), space.q_rep[0]), a)  # q(b1*a) representative
    ext, sub, embed, project = _quadratic_subfield(h, qa)
    if e is None:
        perp = orthogonal_complement(alg, sub)
        e = next(v for v in perp.basis() if not v.norm().is_zero())
    else:
        perp = orthogonal_complement(alg, sub)
        if not perp.contains(e) or e.norm().is_zero():
            raise BadOrthogonalUnit("e must be orthogonal to the subfield "
                                    "with nonzero norm")
    frame = DoublingFrame(alg, sub, e, check=False)
    ne = e.norm()  # N(e) in the base field

    inv_new = InvolutorySet(ext, SIGMA_GALOIS,
                            name="(%r, %r, gal)" % (ext, alg.base))
    q_a = project(qa)                     # q~(a) = q(a) as subfield value
    q_b = q_a * ext.scalar(ne.val)
    faa = q_a - Scalar(ext, ext.conj(q_a.val))
    fbb = ext.scalar(ne.val) * faa
    zero = ext.zero()
    new = PseudoQuadraticSpace(
        inv_new, [q_a, q_b],
        [[faa, zero], [zero, fbb]],
        name="up(%r)" % space)

    def gamma(p):
        # p = (b1 * x, x^s q(a) x + u) relative to the anchor a
        x = h.mul(h.inv(a), p.a[0]) if a != alg.one() else p.a[0]
        u = h.sub(p.t, h.mul(h.mul(h.conj(x), qa), x))
        if not space.inv.k0_contains(u):
            raise ValueError("point does not lie over the anchor line")
        s_part, t_part = frame.split(x)
        s = project(s_part)
        t = project(t_part)
        u_val = ext.scalar((u.coords[0].val, 0))  # u is a base scalar
        nx = x.norm()  # N(x) in base
        second = ext.scalar(nx.val) * q_a + u_val
        tc = Scalar(ext, ext.conj(t.val))
        return new.point((s, tc), second)

    return new, gamma


def dim_switch_down(space, basis_idx=(0, 1)):
    """2-dim space over a quadratic extension (type iii) -> 1-dim space over
    the quaternion tower (E/F, beta) with beta = -f(b,b) f(a,a)^-1.

    Returns (new_space, gamma) with gamma: T(new) -> T(space).
    """
    if space.dim != 2:
        raise ValueError("dimension switch-down starts from a 2-dim space")
    h = space.h
    if not (isinstance(h, FieldHandle) and isinstance(h.field, QuadExt)):
        raise ValueError("carrier must be a separable quadratic extension")
    i0, i1 = basis_idx
    if not h.is_zero(space.f_gram[i0][i1]):
        raise BasisNotOrthogonal("need f(a, b) = 0")
    ext = h.field
    base = ext.base
    faa = space.f_gram[i0][i0]
    fbb = space.f_gram[i1][i1]
    beta = h.neg(h.mul(fbb, h.inv(faa)))
    if Scalar(ext, ext.conj(beta.val)) != beta:
        raise ValueError("beta is not fixed by the involution")
    beta_base = Scalar(base, beta.val[0])

    # tower presentation of E: complete the square so the first stage is
    # generated by a trace-zero unit
    from .composition import CDAlgebra
    t0, n0 = Scalar(base, ext.t0), Scalar(base, ext.n0)
    two = base.scalar(2)
    if base.characteristic() == 2:
        raise ValueError("switch-down tower form needs characteristic != 2")
    half = two.inv()
    beta1 = t0 * t0 * half * half - n0
    alg = CDAlgebra(base, [beta1, beta_base],
                    name="(%r/%r, %s)" % (ext, base, beta_base))
    halg = as_handle(alg)

    def embed(s):
        # u + v*w  ->  u + v*(t0/2 + e1)
        u, v = Scalar(base, s.val[0]), Scalar(base, s.val[1])
        return alg.from_base(u + v * t0 * half) + alg.unit(1).scale(v)

    def project(y):
        sol = linalg.solve(
            [[alg.one().coords[i], (alg.from_base(t0 * half)
                                    + alg.unit(1)).coords[i]]
             for i in range(alg.dim)], list(y.coords))
        if sol is None:
            raise ValueError("element outside the quadratic stage")
        return Scalar(ext, (sol[0].val, sol[1].val))

    inv_new = InvolutorySet(alg, SIGMA_STANDARD)
    q_new = embed(space.q_rep[i0])
    f_new = q_new - q_new.conj()
    new = PseudoQuadraticSpace(inv_new, [q_new], [[f_new]],
                               name="down(%r)" % space)

    e_unit = alg.unit(2)
    ne = e_unit.norm()
    # q(b) = N(e) q~(a) mod F must hold against the original space
    qb = space.q_rep[i1]
    if not space.inv.k0_contains(h.sub(qb, h.mul(h.scalar_embed(ne), space.q_rep[i0]))):
        raise ValueError("q(b) is not congruent to N(e) q(a)")

    frame = DoublingFrame(alg, Subspace(alg, [alg.one(), alg.unit(1)]),
                          e_unit, check=False)

    def gamma(p):
        # p = (b1 * x, x^s q~(a) x + u) in the 1-dim space over the tower
        x = p.a[0]
        qa_alg = q_new
        u = halg.sub(p.t, halg.mul(halg.mul(halg.conj(x), qa_alg), x))
        if not new.inv.k0_contains(u):
            raise ValueError("point does not lie over the anchor line")
        s_part, t_part = frame.split(x)
        s, t = project(s_part), project(t_part)
        u_val = Scalar(ext, (u.coords[0].val, 0))
        nx = x.norm()
        second = h.mul(h.scalar_embed(nx), space.q_rep[i0])
        second = h.add(second, u_val)
        vec = [h.zero(), h.zero()]
        vec[i0] = s
        vec[i1] = Scalar(ext, ext.conj(t.val))
        return space.point(tuple(vec), second)

    return new, gamma
