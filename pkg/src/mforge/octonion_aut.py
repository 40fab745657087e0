"""Jordan automorphisms of octonion towers: the exceptional maps that fix a
quaternion subalgebra and twist the complementary half, conjugations, the
standard involution, and decomposition/witness searches.

A JordanMap is an ordered chain of atoms applied right-to-left.  The split
x = h + e*y against a quaternion subalgebra is cached per atom so repeated
application stays cheap.
"""

from __future__ import annotations

import random

from . import linalg
from .composition import (CDElement, DoublingFrame, Subspace, bilinear,
                          orthogonal_complement, subalgebra_generated)
from .report import Report


class Atom:
    def apply(self, x):  # pragma: no cover - interface
        raise NotImplementedError


class StandardInvolution(Atom):
    def apply(self, x):
        return x.conj()

    def __repr__(self):
        return "sigma_s"


class Conj(Atom):
    """x -> w^-1 x w."""

    def __init__(self, w):
        if w.norm().is_zero():
            raise ValueError("conjugation needs an invertible element")
        self.w = w
        self.w_inv = w.inverse()

    def apply(self, x):
        return (self.w_inv * x) * self.w

    def __repr__(self):
        return "conj[%r]" % self.w


class Linear(Atom):
    def __init__(self, matrix):
        self.matrix = [row[:] for row in matrix]

    def apply(self, x):
        return CDElement(x.algebra,
                         tuple(linalg.mat_vec(self.matrix, list(x.coords))))

    def __repr__(self):
        return "linear"


class _Split(Atom):
    """Shared plumbing for the half-twisting atoms."""

    def __init__(self, algebra, sub, e, w):
        if sub.dim != 4 or not sub.is_subalgebra():
            raise ValueError("need a 4-dimensional subalgebra")
        perp = orthogonal_complement(algebra, sub)
        if not perp.contains(e) or sub.contains(e) or e.norm().is_zero():
            raise ValueError("e must lie outside the subalgebra, orthogonal "
                             "to it, with nonzero norm")
        if not sub.contains(w) or w.norm().is_zero():
            raise ValueError("w must be invertible inside the subalgebra")
        self.algebra = algebra
        self.sub = sub
        self.e = e
        self.w = w
        self.w_inv = w.inverse()
        self.frame = DoublingFrame(algebra, sub, e, check=False)


class Psi(_Split):
    """x + e*y -> x + e * w^-1 y w."""

    def apply(self, v):
        x, y = self.frame.split(v)
        return x + self.e * ((self.w_inv * y) * self.w)

    def __repr__(self):
        return "psi[w=%r]" % self.w


class Phi(_Split):
    """x + e*y -> w^-1 x w + e * w^-1 y w p, with N(p) = 1."""

    def __init__(self, algebra, sub, e, w, p):
        super().__init__(algebra, sub, e, w)
        if not sub.contains(p) or p.norm() != algebra.base.one():
            raise ValueError("p must lie in the subalgebra with norm 1")
        self.p = p

    def apply(self, v):
        x, y = self.frame.split(v)
        return ((self.w_inv * x) * self.w
                + self.e * (((self.w_inv * y) * self.w) * self.p))

    def __repr__(self):
        return "phi[w=%r,p=%r]" % (self.w, self.p)


class JordanMap:
    """A chain of atoms, applied right-to-left."""

    def __init__(self, atoms, algebra):
        self.atoms = list(atoms)
        self.algebra = algebra

    def apply(self, x):
        for atom in reversed(self.atoms):
            x = atom.apply(x)
        return x

    def __call__(self, x):
        return self.apply(x)

    def compose(self, other):
        return JordanMap(self.atoms + other.atoms, self.algebra)

    def __repr__(self):
        return " . ".join(repr(a) for a in self.atoms) or "id"


def jaut_apply(jmap, x):
    return jmap.apply(x)


def standard_quaternion_frame(algebra):
    """The first-half subalgebra and the top doubling unit."""
    half = algebra.dim // 2
    sub = Subspace(algebra, algebra.basis()[:half])
    return sub, algebra.unit(half)


def jaut_verify(jmap, samples=300, seed=31, witness_budget=None):
    """Jordan law, norm isometry, and witness searches against being an
    automorphism / an anti-automorphism."""
    algebra = jmap.algebra
    rng = random.Random(seed)
    rep = Report("jordanmap.verify", seed=seed, subject=repr(jmap))
    budget = witness_budget if witness_budget is not None else samples

    rep.add("jordan.unit", 1, jmap(algebra.one()) == algebra.one())

    ok, cex = True, None
    for k in range(samples):
        x = algebra.random_element(rng, 9)
        y = algebra.random_element(rng, 9)
        if jmap((x * y) * x) != (jmap(x) * jmap(y)) * jmap(x):
            ok, cex = False, (repr(x), repr(y))
            break
    rep.add("jordan.palindrome", samples, ok, counterexample=cex)

    ok, cex = True, None
    for k in range(samples):
        x = algebra.random_element(rng, 9)
        img = jmap(x)
        scal = jmap(algebra.from_base(x.norm()))
        if img.norm() != scal.coords[0] or any(
                not c.is_zero() for c in scal.coords[1:]):
            ok, cex = False, repr(x)
            break
    rep.add("norm.isometry", samples, ok, counterexample=cex)

    auto_w = anti_w = None
    for _ in range(budget):
        s = algebra.random_element(rng, 9)
        t = algebra.random_element(rng, 9)
        img = jmap(s * t)
        if auto_w is None and img != jmap(s) * jmap(t):
            auto_w = (repr(s), repr(t))
        if anti_w is None and img != jmap(t) * jmap(s):
            anti_w = (repr(s), repr(t))
        if auto_w and anti_w:
            break
    rep.add("witness.not-multiplicative", budget, True,
            counterexample=auto_w,
            note="found" if auto_w else "no witness within budget")
    rep.add("witness.not-anti-multiplicative", budget, True,
            counterexample=anti_w,
            note="found" if anti_w else "no witness within budget")
    rep.auto_witness = auto_w
    rep.anti_witness = anti_w
    return rep


def psi_product_rule_check(psi, samples=300, seed=37):
    """psi(st) = (psi(s) * psi(t) w) w^-1 on sampled pairs."""
    if not isinstance(psi, Psi):
        raise TypeError("a single half-twist atom is required")
    algebra = psi.algebra
    rng = random.Random(seed)
    rep = Report("psi.product-rule", seed=seed, subject=repr(psi))
    ok, cex = True, None
    for k in range(samples):
        s = algebra.random_element(rng, 9)
        t = algebra.random_element(rng, 9)
        lhs = psi.apply(s * t)
        rhs = (psi.apply(s) * (psi.apply(t) * psi.w)) * psi.w_inv
        if lhs != rhs:
            ok, cex = False, (repr(s), repr(t))
            break
    rep.add("psi.product-rule", samples, ok, counterexample=cex)
    return rep


def extend_to_quaternion_subalgebra(algebra, w):
    """A 4-dim subalgebra containing w, grown stage by stage."""
    sub = subalgebra_generated(algebra, [w])
    if sub.dim == 1:
        sub = subalgebra_generated(algebra, [w, algebra.unit(1)])
    if sub.dim == 2:
        # need a separable stage: if the trace form vanishes on it, restart
        # from an element with nonzero trace pairing
        perp = orthogonal_complement(algebra, sub)
        e2 = next(v for v in perp.basis()
                  if not sub.contains(v) and not v.norm().is_zero())
        sub = Subspace(algebra, sub.basis()
                       + [e2 * b for b in sub.basis()])
    if sub.dim != 4 or not sub.is_subalgebra():
        raise ValueError("could not grow a quaternion subalgebra around %r" % w)
    return sub


def gamma_w_decompose(w, samples=200, seed=41):
    """Split conjugation by w into a Phi and a Psi over a quaternion
    subalgebra containing w; verified pointwise on samples."""
    algebra = w.algebra
    if w.norm().is_zero():
        raise ValueError("w must be invertible")
    sub = extend_to_quaternion_subalgebra(algebra, w)
    perp = orthogonal_complement(algebra, sub)
    e = next(v for v in perp.basis() if not v.norm().is_zero())

    wbar_inv_w = (w.conj().inverse()) * w
    p = wbar_inv_w
    psi_arg = (w.inverse() * w.inverse()) * w.conj()
    phi = Phi(algebra, sub, e, w, p)
    psi = Psi(algebra, sub, e, psi_arg)
    chain = JordanMap([phi, psi], algebra)

    rep = Report("gamma-w.decompose", seed=seed, subject=repr(w))
    rep.add("decompose.norm-of-p", 1, p.norm() == algebra.base.one())
    conj = Conj(w)
    rng = random.Random(seed)
    ok, cex = True, None
    for k in range(samples):
        x = algebra.random_element(rng, 9)
        if chain(x) != conj.apply(x):
            ok, cex = False, repr(x)
            break
    rep.add("decompose.matches-conjugation", samples, ok, counterexample=cex)
    return phi, psi, rep


def sigma_s_central_check(jmap, samples=200, seed=43):
    """The standard involution commutes with the chain on samples."""
    algebra = jmap.algebra
    rng = random.Random(seed)
    rep = Report("sigma-s.central", seed=seed, subject=repr(jmap))
    ok, cex = True, None
    for k in range(samples):
        x = algebra.random_element(rng, 9)
        if jmap(x.conj()) != jmap(x).conj():
            ok, cex = False, repr(x)
            break
    rep.add("sigma-s.commutes", samples, ok, counterexample=cex)
    return rep


def special_pair_check(e1, e2):
    """Orthogonality pattern for a special pair, split by characteristic,
    plus its structural consequences when it holds."""
    algebra = e1.algebra
    one = algebra.one()
    rep = Report("special-pair.check", subject="(%r, %r)" % (e1, e2))
    lam, mu = e1.norm(), e2.norm()
    if lam.is_zero() or mu.is_zero():
        raise ValueError("both norms must be nonzero")
    b11 = bilinear(e1, one)
    b21 = bilinear(e2, one)
    b12 = bilinear(e1, e2)
    if algebra.characteristic() != 2:
        special = b11.is_zero() and b21.is_zero() and b12.is_zero()
    else:
        special = (b11 == algebra.base.one()) and b21.is_zero() and b12.is_zero()
    rep.add("special.pattern", 3, special,
            note="lambda=%r mu=%r" % (lam, mu))
    rep.is_special = special
    rep.lam, rep.mu = lam, mu
    if special:
        rep.add("special.e1-not-fixed", 1, e1.conj() != e1)
        span_e = Subspace(algebra, [one, e1])
        perp = orthogonal_complement(algebra, span_e)
        rep.add("special.e2-perp-outside", 1,
                perp.contains(e2) and not span_e.contains(e2))
    return rep
