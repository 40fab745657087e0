"""Anisotropic quadratic spaces with basepoint.

A space stores the values of the form on a basis plus the strict upper
part of the polar form; in characteristic 2 the two are independent, so
both are kept.  Vectors are coordinate tuples over the ground field.
"""

from __future__ import annotations

import itertools
import random

from . import linalg
from .report import Report
from .scalars import Scalar, random_scalar


class ZeroAnchor(ZeroDivisionError):
    pass


class DimensionTooLarge(ValueError):
    pass


class QuadraticSpace:
    """(L0, K, q) with basepoint; anisotropy per the stated policy.

    anisotropy is one of "exhaustive" (finite K, fully checked here),
    "structural" (inherited from a certified division tower) or
    "attested" (user-declared; a sampled check still runs).
    """

    def __init__(self, field, q_basis, f_upper, basepoint, anisotropy=None,
                 name=None, sample_seed=7, samples=64):
        self.field = field
        self.q_basis = [field.scalar(v) for v in q_basis]
        self.dim = len(self.q_basis)
        self.f_upper = {}
        for (i, j), v in f_upper.items():
            if not i < j:
                raise ValueError("store only strict upper entries")
            self.f_upper[(i, j)] = field.scalar(v)
        self.name = name
        self.basepoint = self.vector(basepoint)
        if self.q(self.basepoint) != field.one():
            raise ValueError("basepoint must have q = 1")
        if anisotropy is None:
            anisotropy = "exhaustive" if field.is_finite() else "attested"
        self.anisotropy = anisotropy
        self._check_anisotropy(sample_seed, samples)

    def _check_anisotropy(self, seed, samples):
        if self.anisotropy == "exhaustive":
            if not self.field.is_finite():
                raise ValueError("exhaustive anisotropy needs a finite field")
            for v in self.enumerate_vectors():
                if not v.is_zero() and self.q(v).is_zero():
                    raise ValueError("form is isotropic at %r" % v)
        elif self.anisotropy in ("structural", "attested"):
            rng = random.Random(seed)
            for _ in range(samples):
                v = self.random_vector(rng, nonzero=True)
                if self.q(v).is_zero():
                    raise ValueError("form is isotropic at %r" % v)
        else:
            raise ValueError("unknown anisotropy policy %r" % self.anisotropy)

    # -- vectors ----------------------------------------------------------
    def vector(self, coords):
        if isinstance(coords, QSVector):
            if coords.space is not self and coords.space != self:
                raise ValueError("vector from another space")
            return coords
        coords = tuple(self.field.scalar(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError("expected %d coordinates" % self.dim)
        return QSVector(self, coords)

    def zero(self):
        return self.vector([0] * self.dim)

    def basis(self):
        out = []
        for k in range(self.dim):
            coords = [0] * self.dim
            coords[k] = 1
            out.append(self.vector(coords))
        return out

    def random_vector(self, rng, height=20, nonzero=False):
        while True:
            v = QSVector(self, tuple(random_scalar(self.field, rng, height)
                                     for _ in range(self.dim)))
            if not (nonzero and v.is_zero()):
                return v

    def enumerate_vectors(self):
        pools = [self.field.elements() for _ in range(self.dim)]
        for combo in itertools.product(*pools):
            yield QSVector(self, tuple(combo))

    # -- the form ----------------------------------------------------------
    def f_entry(self, i, j):
        if i == j:
            q = self.q_basis[i]
            return q + q
        if i > j:
            i, j = j, i
        return self.f_upper.get((i, j), self.field.zero())

    def q(self, v):
        v = self.vector(v)
        acc = self.field.zero()
        for i in range(self.dim):
            acc = acc + self.q_basis[i] * v.coords[i] * v.coords[i]
        for (i, j), f in self.f_upper.items():
            acc = acc + f * v.coords[i] * v.coords[j]
        return acc

    def f(self, u, v):
        u, v = self.vector(u), self.vector(v)
        acc = self.field.zero()
        for i in range(self.dim):
            for j in range(self.dim):
                acc = acc + u.coords[i] * self.f_entry(i, j) * v.coords[j]
        return acc

    def trace(self, v):
        return self.f(self.basepoint, v)

    def sigma(self, v):
        v = self.vector(v)
        return self.basepoint.scale(self.trace(v)) - v

    def gram(self):
        return [[self.f_entry(i, j) for j in range(self.dim)]
                for i in range(self.dim)]

    def proper(self):
        return any(not self.f_entry(i, j).is_zero()
                   for i in range(self.dim) for j in range(self.dim))

    def __eq__(self, other):
        return (isinstance(other, QuadraticSpace)
                and other.field == self.field
                and other.q_basis == self.q_basis
                and other.f_upper == self.f_upper
                and other.basepoint.coords == self.basepoint.coords)

    def __repr__(self):
        return self.name or "QS(dim %d over %r)" % (self.dim, self.field)


class QSVector:
    __slots__ = ("space", "coords")

    def __init__(self, space, coords):
        self.space = space
        self.coords = coords

    def __add__(self, other):
        other = self.space.vector(other)
        return QSVector(self.space,
                        tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        other = self.space.vector(other)
        return QSVector(self.space,
                        tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return QSVector(self.space, tuple(-a for a in self.coords))

    def scale(self, s):
        s = self.space.field.scalar(s)
        return QSVector(self.space, tuple(a * s for a in self.coords))

    def is_zero(self):
        return all(a.is_zero() for a in self.coords)

    def __eq__(self, other):
        return (isinstance(other, QSVector) and other.space == self.space
                and other.coords == self.coords)

    def __hash__(self):
        return hash(tuple(c.val for c in self.coords))

    def key(self):
        return tuple(c.val for c in self.coords)

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.coords) + ")"


def qs_eval(space, v):
    """(q(v), T(v), sigma(v))."""
    v = space.vector(v)
    return space.q(v), space.trace(v), space.sigma(v)


def qs_hua(space, a, v, cross_check=True):
    """Hua map h_a(v); both defining routes computed and compared."""
    a, v = space.vector(a), space.vector(v)
    qa = space.q(a)
    if qa.is_zero():
        raise ZeroAnchor("anchor has q = 0")
    vs = space.sigma(v)
    closed = a.scale(space.f(a, vs)) - vs.scale(qa)
    if cross_check:
        # reflection route: pi_a pi_eps(v) * q(a)
        def pi(w, c):
            return w - c.scale(space.f(c, w) / space.q(c))
        reflected = pi(pi(v, space.basepoint), a).scale(qa)
        assert closed == reflected
    return closed


def qs_defect(space):
    """(radical of the polar form as a coordinate basis, properness flag)."""
    rows = space.gram()
    ker = linalg.kernel_basis(rows, space.field, n_cols=space.dim)
    return [space.vector(v) for v in ker], space.proper()


class SmallField:
    """Field structure on a space of dimension <= 2 (the unique one that
    makes the basepoint line a subfield and q the norm).

    Acts like a multiplicative handle on QSVectors; used by the linear
    Moufang-set family for the coincidence checks.
    """

    TYPE_INSEPARABLE = "i"
    TYPE_TRIVIAL = "ii"
    TYPE_SEPARABLE = "iii"

    def __init__(self, space):
        if space.dim > 2:
            raise DimensionTooLarge("field structure needs dim <= 2")
        self.space = space
        eps = space.basepoint
        if space.dim == 1:
            self.xt = None
        else:
            # any vector outside the basepoint line
            line = linalg.rref([list(eps.coords)])
            self.xt = next(b for b in space.basis()
                           if not linalg.in_span(line, list(b.coords)))
            self._to_frame = linalg.invert(
                [[eps.coords[i], self.xt.coords[i]] for i in range(2)])
        self.type_tag = self._classify()

    def _classify(self):
        sp = self.space
        if sp.dim == 1:
            return self.TYPE_TRIVIAL
        sigma_is_id = all(sp.sigma(b) == b for b in sp.basis())
        if sp.field.characteristic() == 2 and sigma_is_id:
            return self.TYPE_INSEPARABLE
        return self.TYPE_SEPARABLE

    def _frame(self, v):
        """Coordinates (s, t) with v = eps*s + xt*t."""
        if self.xt is None:
            eps = self.space.basepoint
            k = next(i for i in range(1) if not eps.coords[i].is_zero())
            return v.coords[k] / eps.coords[k], self.space.field.zero()
        s, t = linalg.mat_vec(self._to_frame, list(v.coords))
        return s, t

    def mul(self, u, v):
        sp = self.space
        s, t = self._frame(u)
        s2, t2 = self._frame(v)
        if self.xt is None:
            return sp.basepoint.scale(s * s2)
        qx = sp.q(self.xt)
        tx = sp.trace(self.xt)
        a = s * s2 - qx * t * t2
        b = s * t2 + s2 * t + tx * t * t2
        return sp.basepoint.scale(a) + self.xt.scale(b)

    def one(self):
        return self.space.basepoint

    def inv(self, v):
        # v * sigma(v) = eps * q(v), so 1/v = sigma(v) / q(v)
        return self.space.sigma(v).scale(self.space.q(v).inv())

    def embed_scalar(self, s):
        return self.space.basepoint.scale(s)


def qs_small_dim_field(space, samples=64, seed=5):
    """(SmallField, phi: K -> <eps>) with the norm condition verified."""
    fld = SmallField(space)
    rng = random.Random(seed)
    sp = space
    checked = 0
    if sp.field.is_finite():
        pool = list(sp.enumerate_vectors())
    else:
        pool = [sp.random_vector(rng, 9) for _ in range(samples)]
    for v in pool:
        lhs = fld.mul(v, sp.sigma(v))
        if lhs != fld.embed_scalar(sp.q(v)):
            raise AssertionError("norm condition failed at %r" % v)
        checked += 1
    return fld, fld.embed_scalar


def verify_space(space, samples=200, seed=3):
    """Sampled structural laws: sigma involutive, trace/pairing symmetry,
    f(x,x) = 2q(x), Hua linearity and the anchor-scaling rule."""
    rng = random.Random(seed)
    rep = Report("quadspace.laws", seed=seed, subject=repr(space))

    def rand(nonzero=False):
        return space.random_vector(rng, 9, nonzero=nonzero)

    def run(rule, n_args, check, nonzero=False):
        for k in range(samples):
            args = tuple(rand(nonzero) for _ in range(n_args))
            if not check(*args):
                rep.add(rule, k + 1, False,
                        counterexample=[repr(a) for a in args])
                return
        rep.add(rule, samples, True)

    run("sigma.involutive", 1, lambda x: space.sigma(space.sigma(x)) == x)
    run("trace.sigma-invariant", 1,
        lambda x: space.trace(space.sigma(x)) == space.trace(x))
    run("pairing.sigma-symmetry", 2,
        lambda x, y: space.f(space.sigma(x), y) == space.f(x, space.sigma(y)))
    run("pairing.diagonal", 1,
        lambda x: space.f(x, x) == space.q(x) + space.q(x))
    run("hua.additive", 3,
        lambda a, x, y: qs_hua(space, a, x + y)
        == qs_hua(space, a, x) + qs_hua(space, a, y)
        if not space.q(a).is_zero() else True, nonzero=True)

    for k in range(samples):
        a = rand(nonzero=True)
        x = rand()
        s = random_scalar(space.field, rng, 9, nonzero=True)
        if qs_hua(space, a.scale(s), x) != qs_hua(space, a, x).scale(s * s):
            rep.add("hua.anchor-scaling", k + 1, False,
                    counterexample=[repr(a), repr(x), repr(s)])
            break
    else:
        rep.add("hua.anchor-scaling", samples, True)

    if space.field.is_finite():
        elems = list(space.enumerate_vectors())
        ok = True
        for a in elems:
            if a.is_zero():
                continue
            images = {qs_hua(space, a, x).key() for x in elems}
            if len(images) != len(elems):
                ok = False
                break
        rep.add("hua.bijective", len(elems), ok)
    return rep


# -- constructors -----------------------------------------------------------

def space_from_algebra(algebra, name=None):
    """The norm form of a doubling tower as a quadratic space (basepoint 1)."""
    basis = algebra.basis()
    from .composition import bilinear
    q_basis = [b.norm() for b in basis]
    f_upper = {}
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            v = bilinear(basis[i], basis[j])
            if not v.is_zero():
                f_upper[(i, j)] = v
    anis = "structural" if algebra.is_division else "attested"
    return QuadraticSpace(algebra.base, q_basis, f_upper,
                          [1] + [0] * (algebra.dim - 1), anisotropy=anis,
                          name=name or ("N(%r)" % algebra))


def space_from_quadext(ext, name=None):
    """A quadratic extension as a 2-dim space over its base (q = norm)."""
    base = ext.base
    one = ext.one_payload()
    gen = (base.zero_payload(), base.one_payload())
    q0 = Scalar(base, ext.norm_payload(one))
    q1 = Scalar(base, ext.norm_payload(gen))
    f01 = Scalar(base, ext.norm_payload(ext.add(one, gen))) - q0 - q1
    return QuadraticSpace(base, [q0, q1], {(0, 1): f01}, [1, 0],
                          name=name or ("N(%r)" % ext))
