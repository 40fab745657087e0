"""Involutory sets and indifferent sets: axioms, properness, quadratic-type
classification, and opposites of indifferent sets."""

from __future__ import annotations

import random

from .composition import center as cd_center
from .handles import CDHandle, FieldHandle, Span, as_handle, ring_closure
from .report import Report
from .scalars import QuadExt


class UnrepresentableClosure(ValueError):
    pass


SIGMA_IDENTITY = "identity"
SIGMA_STANDARD = "standard_involution"
SIGMA_GALOIS = "galois"

QUAD_TYPES = ("i", "ii", "iii", "iv", "v", "none")


class InvolutorySet:
    """(K, K0, sigma) with K a field or doubling tower.

    K0 is an additive span given by generators over the handle's
    coordinate field; sigma is one of the named involutions.
    """

    def __init__(self, carrier, sigma, k0_gens=None, name=None):
        self.handle = as_handle(carrier)
        if sigma not in (SIGMA_IDENTITY, SIGMA_STANDARD, SIGMA_GALOIS):
            raise ValueError("unknown involution tag %r" % sigma)
        if sigma == SIGMA_GALOIS and not (
                isinstance(self.handle, FieldHandle)
                and isinstance(self.handle.field, QuadExt)):
            raise ValueError("galois involution needs a quadratic extension")
        self.sigma_tag = sigma
        gens = [self.handle.one()] if k0_gens is None else list(k0_gens)
        if not any(self.handle.sub(g, self.handle.one()).is_zero()
                   for g in gens):
            gens = [self.handle.one()] + gens
        self.k0 = Span(self.handle, gens)
        self.name = name

    def sigma(self, x):
        if self.sigma_tag == SIGMA_IDENTITY:
            return x
        return self.handle.conj(x)

    def sigma_is_identity(self, rng=None, samples=16):
        if self.sigma_tag == SIGMA_IDENTITY:
            return True
        rng = rng or random.Random(1)
        return all(self.sigma(x) == x
                   for x in (self.handle.random(rng, 9) for _ in range(samples)))

    def k0_contains(self, x):
        return self.k0.contains(x)

    def __repr__(self):
        return self.name or "(%r, K0 dim %d, %s)" % (
            self.handle, self.k0.dim, self.sigma_tag)


def inv_check(inv_set, samples=64, seed=3):
    """Axioms, properness and quadratic-type tag for an involutory set."""
    h = inv_set.handle
    rng = random.Random(seed)
    rep = Report("involutory.check", seed=seed, subject=repr(inv_set))

    rep.add("axiom.one-in-k0", 1, inv_set.k0_contains(h.one()))

    ok, cex = True, None
    for _ in range(samples):
        a = h.random(rng, 9)
        tr = h.add(a, inv_set.sigma(a))
        if not inv_set.k0_contains(tr):
            ok, cex = False, h.render(a)
            break
    rep.add("axiom.traces-in-k0", samples, ok, counterexample=cex)

    fixed = all(inv_set.sigma(b) == b for b in inv_set.k0.basis())
    rep.add("axiom.k0-fixed-by-sigma", inv_set.k0.dim, fixed)

    ok, cex = True, None
    for _ in range(samples):
        a = h.random(rng, 9)
        for g in inv_set.k0.basis():
            v = h.mul(h.mul(inv_set.sigma(a), g), a)
            if not inv_set.k0_contains(v):
                ok, cex = False, (h.render(a), h.render(g))
                break
        if not ok:
            break
    rep.add("axiom.sandwich", samples, ok, counterexample=cex)

    sigma_id = inv_set.sigma_is_identity(rng)
    closure, status = ring_closure(h, inv_set.k0)
    generates = status == "full"
    if status == "inconclusive":
        rep.add("proper", samples, False, note="ring-closure inconclusive")
        proper = None
    else:
        proper = (not sigma_id) and generates
        rep.add("proper", 1, True, note="proper" if proper else "non-proper")
    rep.quad_type = _quad_type(inv_set, sigma_id, rng, samples)
    rep.add("quad-type", 1, True, note=rep.quad_type)
    rep.proper = proper
    return rep


def _quad_type(inv_set, sigma_id, rng, samples):
    h = inv_set.handle
    if isinstance(h, CDHandle):
        alg = h.algebra
        if inv_set.sigma_tag != SIGMA_STANDARD:
            return "none"
        # K0 must be the center (the scalar line for dim >= 4 towers)
        ctr = cd_center(alg)
        k0_is_center = (inv_set.k0.dim == ctr.dim
                        and all(ctr.contains(b) for b in inv_set.k0.basis()))
        if not k0_is_center:
            return "none"
        if alg.dim == 8:
            return "v"
        if alg.dim == 4:
            return "iv"
        return "none"
    # field carriers
    field = h.field
    if sigma_id:
        if inv_set.k0.is_full():
            return "ii"
        if field.characteristic() == 2:
            # squares of a spanning sample must land in K0
            for _ in range(samples):
                x = h.random(rng, 9)
                if not inv_set.k0_contains(h.mul(x, x)):
                    return "none"
            return "i"
        return "none"
    # galois case: K0 must be the fixed field (the base line)
    base_line = Span(h, [h.one()])
    if inv_set.k0.dim == base_line.dim == 1 or _same_span(inv_set.k0, base_line):
        return "iii"
    return "none"


def _same_span(a, b):
    return a.dim == b.dim and all(a.contains(x) for x in b.basis())


class IndifferentSet:
    """(K, K0, L0) in characteristic 2.

    K0 and L0 are additive spans given by generators; the field K of the
    triple is the ring closure of K0, tracked as a span inside an ambient
    field that keeps everything representable.  Opposites stay inside the
    same ambient.
    """

    def __init__(self, ambient, k0_gens, l0_gens, name=None):
        self.handle = as_handle(ambient)
        if self.handle.characteristic() != 2:
            raise ValueError("indifferent sets live in characteristic 2")
        self.k0 = Span(self.handle, list(k0_gens))
        self.l0 = Span(self.handle, list(l0_gens))
        if not (self.k0.contains(self.handle.one())
                and self.l0.contains(self.handle.one())):
            raise ValueError("both spans must contain 1")
        self.k_field, self._k_status = ring_closure(self.handle, self.k0)
        if self._k_status == "inconclusive":
            raise UnrepresentableClosure("K = <K0> did not stabilize in the "
                                         "ambient representation")
        self.name = name

    def __repr__(self):
        return self.name or "(K dim %d, K0 dim %d, L0 dim %d over %r)" % (
            self.k_field.dim, self.k0.dim, self.l0.dim, self.handle)


def ind_check(ind):
    """Closure axioms and properness for an indifferent set."""
    h = ind.handle
    rep = Report("indifferent.check", subject=repr(ind))

    ok, cex = True, None
    for k in ind.k0.basis():
        k2 = h.mul(k, k)
        for l in ind.l0.basis():
            if not ind.l0.contains(h.mul(k2, l)):
                ok, cex = False, (h.render(k), h.render(l))
                break
        if not ok:
            break
    rep.add("axiom.k0sq-l0", ind.k0.dim * ind.l0.dim, ok, counterexample=cex)

    ok, cex = True, None
    for l in ind.l0.basis():
        for k in ind.k0.basis():
            if not ind.k0.contains(h.mul(l, k)):
                ok, cex = False, (h.render(l), h.render(k))
                break
        if not ok:
            break
    rep.add("axiom.l0k0-k0", ind.k0.dim * ind.l0.dim, ok, counterexample=cex)

    # <K0> = K holds by construction; record the closure dimension
    rep.add("axiom.k0-generates", 1, True,
            note="K = <K0> has dim %d" % ind.k_field.dim)

    k0_proper = ind.k0.dim != ind.k_field.dim
    l_closure, l_status = ring_closure(h, ind.l0)
    if l_status == "inconclusive":
        raise UnrepresentableClosure("L = <L0> did not stabilize")
    l0_proper = l_closure.dim != ind.l0.dim
    rep.proper = k0_proper and l0_proper
    rep.add("proper", 1, True, note="proper" if rep.proper else "non-proper")

    # Frobenius injectivity on the represented fragment
    seen = {}
    inj = True
    for g in ind.k0.basis() + ind.l0.basis():
        key = h.key(h.mul(g, g))
        if key in seen and seen[key] != h.key(g):
            inj = False
        seen[key] = h.key(g)
    rep.add("frobenius.injective-on-fragment", len(seen), inj)
    return rep


def ind_opposite(ind):
    """The opposite indifferent set (<L0>, L0, K0^2), built symbolically
    inside the same ambient field."""
    h = ind.handle
    k0_sq = [h.mul(g, g) for g in ind.k0.basis()]
    return IndifferentSet(_carrier_of(ind), ind.l0.basis(), k0_sq,
                          name="opp(%r)" % ind)


def _carrier_of(ind):
    h = ind.handle
    if isinstance(h, FieldHandle):
        return h.field
    return h


def double_opposite_matches_squares(ind):
    """Generators of the double opposite span the squares of the originals."""
    h = ind.handle
    opp2 = ind_opposite(ind_opposite(ind))
    k_sq = Span(h, [h.mul(g, g) for g in ind.k0.basis()])
    l_sq = Span(h, [h.mul(g, g) for g in ind.l0.basis()])
    return (_same_span(opp2.k0, k_sq) and _same_span(opp2.l0, l_sq))
