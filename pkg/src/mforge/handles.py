"""Uniform handles over the multiplicative carriers used downstream.

The involutory/indifferent structures, Moufang-set families, polygon
parameter groups and foundation glueings all need the same small protocol
over "something you can multiply": a field, a doubling tower, the opposite
of either, or a constructed small field on a quadratic space.  A handle
bundles that protocol together with exact coordinates over a ground field
so spans can be decided by linear algebra.
"""

from __future__ import annotations

from . import linalg
from .composition import CDAlgebra, CDElement
from .quadspace import SmallField
from .scalars import Field, QuadExt, Scalar, random_scalar


class FieldHandle:
    """A plain field as a carrier; coordinates over itself or, for a
    quadratic extension, over its base."""

    def __init__(self, field):
        self.field = field
        if isinstance(field, QuadExt):
            self.coord_field = field.base
            self.coord_dim = 2
        else:
            self.coord_field = field
            self.coord_dim = 1

    def one(self):
        return self.field.one()

    def zero(self):
        return self.field.zero()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inv()

    def is_zero(self, a):
        return a.is_zero()

    def conj(self, a):
        if isinstance(self.field, QuadExt):
            return Scalar(self.field, self.field.conj(a.val))
        return a

    def coords(self, a):
        if self.coord_dim == 1:
            return [a]
        return [Scalar(self.coord_field, a.val[0]),
                Scalar(self.coord_field, a.val[1])]

    def uncoords(self, coords):
        if self.coord_dim == 1:
            return coords[0]
        return Scalar(self.field, (coords[0].val, coords[1].val))

    def characteristic(self):
        return self.field.characteristic()

    def is_finite(self):
        return self.field.is_finite()

    def elements(self):
        return self.field.elements()

    def random(self, rng, height=20, nonzero=False):
        return random_scalar(self.field, rng, height, nonzero)

    def key(self, a):
        return a.val

    def render(self, a):
        return repr(a)

    def is_commutative(self):
        return True

    def is_associative(self):
        return True

    def scalar_embed(self, s):
        return self.field.scalar(s)

    def opposite(self):
        return self  # commutative

    def __eq__(self, other):
        return isinstance(other, FieldHandle) and other.field == self.field

    def __hash__(self):
        return hash(("FieldHandle", self.field))

    def __repr__(self):
        return repr(self.field)


class CDHandle:
    """A doubling tower as a carrier; coordinates over the base field."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.coord_field = algebra.base
        self.coord_dim = algebra.dim

    def one(self):
        return self.algebra.one()

    def zero(self):
        return self.algebra.zero()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a):
        return a.is_zero()

    def conj(self, a):
        return a.conj()

    def coords(self, a):
        return list(a.coords)

    def uncoords(self, coords):
        return CDElement(self.algebra, tuple(coords))

    def characteristic(self):
        return self.algebra.characteristic()

    def is_finite(self):
        return self.algebra.base.is_finite()

    def elements(self):
        return self.algebra._all_elements()

    def random(self, rng, height=20, nonzero=False):
        return self.algebra.random_element(rng, height, nonzero=nonzero)

    def key(self, a):
        return a.key()

    def render(self, a):
        return repr(a)

    def is_commutative(self):
        return self.algebra.dim <= 2

    def is_associative(self):
        return self.algebra.dim <= 4

    def scalar_embed(self, s):
        return self.algebra.from_base(s)

    def opposite(self):
        return OppositeHandle(self)

    def __eq__(self, other):
        return isinstance(other, CDHandle) and other.algebra == self.algebra

    def __hash__(self):
        return hash(("CDHandle", self.algebra))

    def __repr__(self):
        return repr(self.algebra)


class OppositeHandle:
    """Same carrier, reversed multiplication."""

    def __init__(self, inner):
        # double opposite collapses
        if isinstance(inner, OppositeHandle):
            raise ValueError("unwrap instead of double-wrapping")
        self.inner = inner
        self.coord_field = inner.coord_field
        self.coord_dim = inner.coord_dim

    def mul(self, a, b):
        return self.inner.mul(b, a)

    def opposite(self):
        return self.inner

    def __getattr__(self, name):
        return getattr(self.inner, name)

    def __eq__(self, other):
        return isinstance(other, OppositeHandle) and other.inner == self.inner

    def __hash__(self):
        return hash(("Opp", self.inner))

    def __repr__(self):
        return "%r^op" % self.inner


class SmallFieldHandle:
    """The constructed field on a dim<=2 quadratic space as a carrier."""

    def __init__(self, small):
        if not isinstance(small, SmallField):
            small = SmallField(small)
        self.small = small
        self.space = small.space
        self.coord_field = self.space.field
        self.coord_dim = self.space.dim

    def one(self):
        return self.small.one()

    def zero(self):
        return self.space.zero()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return self.small.mul(a, b)

    def inv(self, a):
        return self.small.inv(a)

    def is_zero(self, a):
        return a.is_zero()

    def conj(self, a):
        return self.space.sigma(a)

    def coords(self, a):
        return list(a.coords)

    def uncoords(self, coords):
        return self.space.vector(coords)

    def characteristic(self):
        return self.space.field.characteristic()

    def is_finite(self):
        return self.space.field.is_finite()

    def elements(self):
        return list(self.space.enumerate_vectors())

    def random(self, rng, height=20, nonzero=False):
        return self.space.random_vector(rng, height, nonzero=nonzero)

    def key(self, a):
        return a.key()

    def render(self, a):
        return repr(a)

    def is_commutative(self):
        return True

    def is_associative(self):
        return True

    def scalar_embed(self, s):
        return self.small.embed_scalar(self.space.field.scalar(s))

    def opposite(self):
        return self

    def __eq__(self, other):
        return isinstance(other, SmallFieldHandle) and other.space == self.space

    def __hash__(self):
        return hash(("SmallFieldHandle", id(self.space)))

    def __repr__(self):
        return "F(%r)" % self.space


def as_handle(obj):
    if isinstance(obj, (FieldHandle, CDHandle, OppositeHandle, SmallFieldHandle)):
        return obj
    if isinstance(obj, Field):
        return FieldHandle(obj)
    if isinstance(obj, CDAlgebra):
        return CDHandle(obj)
    if isinstance(obj, SmallField):
        return SmallFieldHandle(obj)
    raise TypeError("no handle for %r" % (obj,))


class Span:
    """An additive span of carrier elements over the coordinate field,
    decided by exact row reduction."""

    def __init__(self, handle, gens):
        self.handle = handle
        rows = [[c for c in handle.coords(g)] for g in gens]
        self.rows, self.pivots = linalg.rref(rows)

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        return [self.handle.uncoords(r) for r in self.rows]

    def contains(self, x):
        return linalg.in_span((self.rows, self.pivots),
                              list(self.handle.coords(x)))

    def extended(self, xs):
        return Span(self.handle, self.basis() + list(xs))

    def is_full(self):
        return self.dim == self.handle.coord_dim

    def sample(self, rng, height=9):
        acc = self.handle.zero()
        for b in self.basis():
            c = random_scalar(self.handle.coord_field, rng, height)
            acc = self.handle.add(acc, _scale(self.handle, b, c))
        return acc

    def elements(self):
        """All span elements (finite coordinate field only)."""
        if not self.handle.coord_field.is_finite():
            raise TypeError("infinite span")
        out = [self.handle.zero()]
        for b in self.basis():
            new = []
            for e in out:
                for c in self.handle.coord_field.elements():
                    new.append(self.handle.add(e, _scale(self.handle, b, c)))
            out = new
        seen, uniq = set(), []
        for e in out:
            k = self.handle.key(e)
            if k not in seen:
                seen.add(k)
                uniq.append(e)
        return uniq


def _scale(handle, x, c):
    """Coordinate-wise scaling by an element of the coordinate field."""
    return handle.uncoords([ci * c for ci in handle.coords(x)])


def ring_closure(handle, span, rounds=8):
    """Bounded span-closure under products.

    Returns (final_span, status) with status in {"full", "stable",
    "inconclusive"}: reached the whole carrier, provably stabilized below
    it, or still growing when the round budget ran out.
    """
    current = span
    for _ in range(rounds):
        if current.is_full():
            return current, "full"
        bas = current.basis()
        extra = [handle.mul(a, b) for a in bas for b in bas
                 if not current.contains(handle.mul(a, b))]
        if not extra:
            return current, "stable"
        current = current.extended(extra)
    return current, "full" if current.is_full() else "inconclusive"
