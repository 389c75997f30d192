"""Irreducible representations of compact groups by dominant highest weight.

All data is exact: dimensions from the Weyl product formula, Casimir
eigenvalues ``<w, w + 2*rho>`` in the fixed normalization, weight
multiplicities by the Freudenthal recursion, tensor products by character
multiplication followed by deterministic highest-weight peeling (largest
weight in lexicographic epsilon-coordinate order is removed first).

Reduced root systems only, except where noted: the non-reduced family BC
carries no representations and is rejected by every operation here that
needs a Lie group behind the lattice.  Torus factors are allowed everywhere
(weights are one-dimensional characters).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping

from .errors import DecompositionError, GroupSpecError, WeightError
from .roots import (RootSystem, Rational, Vector, rat, vadd, vneg, vscale,
                    vsub)


def _require_reduced(rs: RootSystem):
    if any(f.family == "BC" for f in rs.factors):
        raise GroupSpecError("family BC is non-reduced and carries no irreps")


def _require_dominant(rs: RootSystem, w: Vector) -> Vector:
    w = rs.canon(w)
    if not rs.is_dominant_integral(w):
        raise WeightError(f"weight {w} is not dominant integral for {rs.spec}")
    return w


class FormalCharacter:
    """A finite multiset of weights with positive integer multiplicities."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Vector, int]):
        self.terms = {w: int(m) for w, m in terms.items() if m}
        if any(m < 0 for m in self.terms.values()):
            raise DecompositionError("formal characters have multiplicities >= 1")

    @property
    def mass(self) -> int:
        return sum(self.terms.values())

    def __eq__(self, other):
        return isinstance(other, FormalCharacter) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __repr__(self):
        return f"FormalCharacter({len(self.terms)} weights, mass {self.mass})"

    def __mul__(self, other: "FormalCharacter") -> "FormalCharacter":
        """Pointwise product of characters on a common torus (weights add)."""
        out: Dict[Vector, int] = {}
        for u, mu in self.terms.items():
            for v, mv in other.terms.items():
                w = vadd(u, v)
                out[w] = out.get(w, 0) + mu * mv
        return FormalCharacter(out)

    def outer(self, other: "FormalCharacter") -> "FormalCharacter":
        """Outer product: characters on independent tori, coordinates concatenate."""
        out: Dict[Vector, int] = {}
        for u, mu in self.terms.items():
            for v, mv in other.terms.items():
                out[u + v] = mu * mv
        return FormalCharacter(out)

    def dual(self) -> "FormalCharacter":
        return FormalCharacter({vneg(w): m for w, m in self.terms.items()})

    def is_self_dual(self) -> bool:
        return all(self.terms.get(vneg(w), 0) == m for w, m in self.terms.items())

    def map_weights(self, fn) -> "FormalCharacter":
        out: Dict[Vector, int] = {}
        for w, m in self.terms.items():
            v = fn(w)
            out[v] = out.get(v, 0) + m
        return FormalCharacter(out)


@dataclass(frozen=True)
class Irrep:
    """An irreducible representation presented by its highest weight."""

    highest_weight: Vector
    dimension: int
    casimir: Rational

    @classmethod
    def of(cls, rs: RootSystem, w: Vector) -> "Irrep":
        w = _require_dominant(rs, w)
        return cls(w, weyl_dimension(rs, w), casimir_eigenvalue(rs, w))


def weyl_dimension(rs: RootSystem, w: Vector) -> int:
    """dim V(w) = prod over positive roots of <w+rho, a> / <rho, a>."""
    _require_reduced(rs)
    w = _require_dominant(rs, w)
    return _weyl_dimension(rs, w)


@lru_cache(maxsize=None)
def _weyl_dimension(rs: RootSystem, w: Vector) -> int:
    rho = rs.weyl_vector
    num = Fraction(1)
    for a in rs.positive_roots:
        num *= Fraction(rs.inner(vadd(w, rho), a)) / Fraction(rs.inner(rho, a))
    if num.denominator != 1:
        raise WeightError(f"Weyl dimension of {w} is not integral")
    return int(num)


def casimir_eigenvalue(rs: RootSystem, w: Vector) -> Rational:
    """<w, w + 2*rho> in the fixed normalization (long roots squared 2)."""
    w = _require_dominant(rs, w)
    two_rho = vscale(2, rs.weyl_vector)
    return rat(rs.inner(w, vadd(w, two_rho)))


def freudenthal(rs: RootSystem, w: Vector) -> Dict[Vector, int]:
    """Multiplicities of the dominant weights of V(w), by Freudenthal."""
    _require_reduced(rs)
    w = _require_dominant(rs, w)
    return _freudenthal(rs, w)


@lru_cache(maxsize=None)
def _freudenthal(rs: RootSystem, lam: Vector) -> Dict[Vector, int]:
    # The dominant weights of V(lam) are the closure of {lam} under
    # subtracting positive roots, keeping dominant results (covers in the
    # dominance order on dominant weights differ by a positive root).
    doms = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in rs.positive_roots:
                nu = vsub(mu, a)
                if nu not in doms and rs.is_dominant(nu):
                    doms.add(nu)
                    nxt.append(nu)
        frontier = nxt

    rho = rs.weyl_vector
    # <., rho> strictly decreases when positive roots are subtracted, so
    # sorting by it processes every weight after all weights above it.
    order = sorted(doms, key=lambda v: (rs.inner(v, rho), v), reverse=True)
    c_top = rs.inner(vadd(lam, rho), vadd(lam, rho))
    mult: Dict[Vector, int] = {lam: 1}
    for mu in order:
        if mu == lam:
            continue
        acc = Fraction(0)
        for a in rs.positive_roots:
            k = 1
            while True:
                x = vadd(mu, vscale(k, a))
                d = rs.dominant_rep(x)
                m = mult.get(d)
                if m is None:
                    break  # weight strings through mu are unbroken
                acc += m * Fraction(rs.inner(x, a))
                k += 1
        denom = c_top - rs.inner(vadd(mu, rho), vadd(mu, rho))
        val = 2 * acc / Fraction(denom)
        if val.denominator != 1 or val <= 0:
            raise WeightError(f"Freudenthal failed at {mu} for {lam}")
        mult[mu] = int(val)
    return mult


def weight_multiplicities(rs: RootSystem, w: Vector) -> FormalCharacter:
    """The complete weight system of V(w) with exact multiplicities."""
    terms: Dict[Vector, int] = {}
    for mu, m in freudenthal(rs, w).items():
        for x in rs.weyl_orbit(mu):
            terms[x] = m
    return FormalCharacter(terms)


def dual(rs: RootSystem, w: Vector) -> Vector:
    """Highest weight of the contragredient representation."""
    w = _require_dominant(rs, w)
    return rs.dominant_rep(vneg(w))


def decompose_character(rs: RootSystem, char: FormalCharacter) -> Dict[Vector, int]:
    """Write a genuine character as a sum of irreducibles by peeling.

    The lexicographically largest weight present is always dominant for a
    genuine character and is removed first with its full multiplicity.
    Raises :class:`DecompositionError` if peeling meets a non-dominant
    leading weight or a negative multiplicity (the input was not a
    character of the given system).
    """
    _require_reduced(rs)
    work = dict(char.terms)
    out: Dict[Vector, int] = {}
    while work:
        top = max(work)
        m = work[top]
        if m < 0 or not rs.is_dominant_integral(top):
            raise DecompositionError(
                f"peeling failed at weight {top} (multiplicity {m}) on {rs.spec}")
        out[top] = out.get(top, 0) + m
        for x, mx in weight_multiplicities(rs, top).terms.items():
            r = work.get(x, 0) - m * mx
            if r < 0:
                raise DecompositionError(
                    f"peeling failed: multiplicity of {x} drops below zero")
            if r:
                work[x] = r
            else:
                work.pop(x, None)
    return out


def tensor_decompose(rs: RootSystem, w1: Vector, w2: Vector) -> Dict[Vector, int]:
    """Decomposition of V(w1) (x) V(w2) into irreducibles."""
    w1 = _require_dominant(rs, w1)
    w2 = _require_dominant(rs, w2)
    product = weight_multiplicities(rs, w1) * weight_multiplicities(rs, w2)
    return decompose_character(rs, product)


def enumerate_dominant(rs: RootSystem, cutoff: Rational) -> list:
    """All dominant integral weights with Casimir <= cutoff.

    Complete because the Casimir is monotone in every Dynkin label and in
    the absolute value of every torus charge; ordered by (Casimir, labels).
    """
    _require_reduced(rs)
    cutoff = rat(cutoff)
    if cutoff < 0:
        raise WeightError("cutoff must be >= 0")
    funds = rs.fundamental_weights
    is_torus = []
    for fac in rs.factors:
        is_torus.extend([fac.family == "T"] * (fac.dim if fac.family == "T"
                                               else fac.rank))
    torus_pos = {i for i, t in enumerate(is_torus) if t}
    zero = rs.zero
    found = []

    def rec(i: int, w: Vector):
        if i == len(funds):
            found.append(w)
            return
        # label 0 first
        rec(i + 1, w)
        step = funds[i]
        v = vadd(w, step)
        while casimir_eigenvalue(rs, v) <= cutoff:
            rec(i + 1, v)
            v = vadd(v, step)
        if i in torus_pos:
            v = vsub(w, step)
            while casimir_eigenvalue(rs, v) <= cutoff:
                rec(i + 1, v)
                v = vsub(v, step)

    if casimir_eigenvalue(rs, zero) <= cutoff:
        rec(0, zero)
    found = [rs.canon(w) for w in found]
    found.sort(key=lambda w: (casimir_eigenvalue(rs, w), rs.dynkin_labels(w)))
    return found
