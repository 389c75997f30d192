"""Classical root systems in exact rational epsilon-coordinates.

Conventions used throughout the package:

* A weight is a plain tuple of exact rationals (``int`` or
  ``fractions.Fraction``) in epsilon-coordinates.  The tuple length is the
  ambient dimension of the root system.
* Type ``A`` with rank r lives in r+1 coordinates; weights are stored as the
  canonical zero-sum representative of their class modulo the all-ones
  vector.
* The invariant inner product is normalized, factor by factor, so that long
  roots have squared length 2 (for the non-reduced family ``BC`` the roots
  ``2*e_i`` count as long).  A global positive ``metric_scale`` can rescale
  the form; eigenvalues downstream scale with it while all multiplicities
  are unchanged.
* Products are supported: a :class:`RootSystem` is a product of classical
  factors and optional torus factors ``T<n>`` (n coordinates, no roots).
  Torus weights are integer vectors.  Spec strings look like ``"A2"``,
  ``"BC2"`` or ``"A3xT1"`` and are case-insensitive.

Weyl groups are never materialized; orbits, dominant representatives and
signed rho-orbits are computed by closure under simple reflections.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Union

from .errors import GroupSpecError, WeightError

Rational = Union[int, Fraction]
Vector = tuple  # tuple of Rational

_FAMILIES = ("A", "B", "C", "D", "BC", "T")


def rat(x) -> Rational:
    """Canonicalize a rational number: integral values become ``int``."""
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


def parse_rational(text: str) -> Rational:
    """Parse ``"p"`` or ``"p/q"`` into an exact rational."""
    text = text.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise GroupSpecError(f"not a rational number: {text!r}")
    return rat(Fraction(text))


def format_rational(x: Rational) -> str:
    """Render a rational as ``p/q`` (denominator always explicit)."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(map(lambda a, b: a + b, u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(map(lambda a, b: a - b, u, v))


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vscale(c: Rational, u: Vector) -> Vector:
    return tuple(rat(c * a) for a in u)


def _unit(dim: int, i: int, value: Rational = 1) -> Vector:
    return tuple(value if j == i else 0 for j in range(dim))


class _Factor:
    """One factor of a (product) root system, embedded at a coordinate offset."""

    __slots__ = ("family", "rank", "dim", "offset")

    def __init__(self, family: str, rank: int, offset: int):
        self.family = family
        self.rank = rank
        self.dim = rank + 1 if family == "A" else rank
        self.offset = offset

    def key(self):
        return (self.family, self.rank)

    def coords(self, w: Vector) -> Vector:
        return w[self.offset:self.offset + self.dim]

    def gram_scale(self) -> Fraction:
        # Long roots squared length 2 within the factor.
        return Fraction(1, 2) if self.family in ("C", "BC") else Fraction(1)

    def positive_roots(self) -> list:
        fam, n, dim = self.family, self.rank, self.dim
        e = lambda i, v=1: _unit(dim, i, v)
        pos = []
        if fam == "A":
            for i in range(dim):
                for j in range(i + 1, dim):
                    pos.append(vsub(e(i), e(j)))
        elif fam in ("B", "C", "D", "BC"):
            for i in range(n):
                for j in range(i + 1, n):
                    pos.append(vsub(e(i), e(j)))
                    pos.append(vadd(e(i), e(j)))
            if fam in ("B", "BC"):
                pos.extend(e(i) for i in range(n))
            if fam in ("C", "BC"):
                pos.extend(e(i, 2) for i in range(n))
        return pos

    def simple_roots(self) -> list:
        fam, n, dim = self.family, self.rank, self.dim
        e = lambda i, v=1: _unit(dim, i, v)
        if fam == "T":
            return []
        simple = [vsub(e(i), e(i + 1)) for i in range(dim - 1)]
        if fam in ("B", "BC"):
            simple.append(e(n - 1))
        elif fam == "C":
            simple.append(e(n - 1, 2))
        elif fam == "D":
            simple.append(vadd(e(n - 2), e(n - 1)))
        return simple

    def fundamental_weights(self) -> list:
        """Fundamental weights in factor coordinates (reduced families only)."""
        fam, n, dim = self.family, self.rank, self.dim
        if fam == "A":
            out = []
            for k in range(1, n + 1):
                shift = Fraction(k, n + 1)
                out.append(tuple(rat((1 if i < k else 0) - shift) for i in range(dim)))
            return out
        if fam == "B":
            out = [tuple(1 if i < k else 0 for i in range(n)) for k in range(1, n)]
            out.append(tuple(Fraction(1, 2) for _ in range(n)))
            return out
        if fam == "C":
            return [tuple(1 if i < k else 0 for i in range(n)) for k in range(1, n + 1)]
        if fam == "D":
            out = [tuple(1 if i < k else 0 for i in range(n)) for k in range(1, n - 1)]
            half = Fraction(1, 2)
            out.append(tuple(half if i < n - 1 else -half for i in range(n)))
            out.append(tuple(half for _ in range(n)))
            return out
        raise GroupSpecError(f"family {fam} has no fundamental weights")

    def weyl_order(self) -> int:
        fam, n = self.family, self.rank
        if fam == "T":
            return 1
        if fam == "A":
            return factorial(n + 1)
        if fam in ("B", "C", "BC"):
            return factorial(n) * 2 ** n
        return factorial(n) * 2 ** (n - 1)  # D

    def root_count(self) -> int:
        fam, n = self.family, self.rank
        return {"A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n,
                "D": 2 * n * (n - 1), "BC": 2 * n * n + 2 * n, "T": 0}[fam]


def _embed(vec: Vector, offset: int, total: int) -> Vector:
    return tuple(vec[i - offset] if offset <= i < offset + len(vec) else 0
                 for i in range(total))


class RootSystem:
    """A product of classical root-system factors and torus factors.

    Instances are immutable; all operations are pure.  Equality and hashing
    are by (factor list, metric scale), so independently built copies share
    memoized computations.
    """

    def __init__(self, factors: Sequence[tuple], metric_scale: Rational = 1):
        scale = rat(metric_scale)
        if not isinstance(scale, (int, Fraction)) or scale <= 0:
            raise GroupSpecError("metric scale must be a positive rational")
        built = []
        offset = 0
        for family, rank in factors:
            family = family.upper()
            if family not in _FAMILIES:
                raise GroupSpecError(f"unsupported family {family!r}")
            if family == "T":
                if rank < 0:
                    raise GroupSpecError("torus rank must be >= 0")
            elif rank < 1:
                raise GroupSpecError(f"rank must be >= 1 for family {family}")
            if family == "D" and rank < 2:
                raise GroupSpecError("family D needs rank >= 2")
            f = _Factor(family, rank, offset)
            built.append(f)
            offset += f.dim
        if not built:
            raise GroupSpecError("empty factor list")
        self.factors = tuple(built)
        self.metric_scale = scale
        self.ambient_dim = offset
        self.rank = sum(f.rank for f in self.factors)
        self._gram_diag = tuple(rat(f.gram_scale() * scale)
                                for f in self.factors for _ in range(f.dim))
        pos = []
        simple = []
        for f in self.factors:
            pos.extend(_embed(r, f.offset, offset) for r in f.positive_roots())
            simple.extend(_embed(r, f.offset, offset) for r in f.simple_roots())
        self.positive_roots = tuple(pos)
        self.simple_roots = tuple(simple)
        self.roots = tuple(pos + [vneg(r) for r in pos])
        half = Fraction(1, 2)
        rho = tuple(0 for _ in range(offset))
        for r in pos:
            rho = vadd(rho, r)
        self.weyl_vector = tuple(rat(half * c) for c in rho)
        self._key = (tuple(f.key() for f in self.factors), scale)

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"RootSystem({self.spec!r})"

    @property
    def spec(self) -> str:
        return "x".join(f"{f.family}{f.rank}" for f in self.factors)

    @property
    def gram(self):
        """The inner product as a full (diagonal) rational matrix."""
        d = self.ambient_dim
        return tuple(tuple(self._gram_diag[i] if i == j else 0 for j in range(d))
                     for i in range(d))

    def with_metric_scale(self, scale: Rational) -> "RootSystem":
        return RootSystem([f.key() for f in self.factors], metric_scale=scale)

    @property
    def is_torus(self) -> bool:
        return all(f.family == "T" for f in self.factors)

    def weyl_order(self) -> int:
        order = 1
        for f in self.factors:
            order *= f.weyl_order()
        return order

    # -- basic linear algebra ----------------------------------------------

    def _check_dim(self, w: Vector):
        if len(w) != self.ambient_dim:
            raise WeightError(
                f"weight length {len(w)} != ambient dimension {self.ambient_dim}"
                f" of {self.spec}")

    def canon(self, w: Iterable) -> Vector:
        """Canonical representative: zero-sum on every type-A block."""
        w = tuple(rat(c) for c in w)
        self._check_dim(w)
        out = list(w)
        for f in self.factors:
            if f.family == "A":
                block = out[f.offset:f.offset + f.dim]
                mean = Fraction(sum(block), f.dim)
                for i in range(f.dim):
                    out[f.offset + i] = rat(block[i] - mean)
        return tuple(out)

    def inner(self, u: Vector, v: Vector) -> Rational:
        self._check_dim(u)
        self._check_dim(v)
        return rat(sum(g * a * b for g, a, b in zip(self._gram_diag, u, v)))

    def pairing(self, w: Vector, root: Vector) -> Rational:
        """Cartan pairing ``2<w, root> / <root, root>``."""
        return rat(2 * self.inner(w, root) / self.inner(root, root))

    def reflect(self, w: Vector, root: Vector) -> Vector:
        return vsub(w, vscale(self.pairing(w, root), root))

    def reflection_matrix(self, root: Vector):
        """The reflection in ``root`` as a matrix on ambient coordinates."""
        basis = (_unit(self.ambient_dim, i) for i in range(self.ambient_dim))
        cols = [self.reflect(b, root) for b in basis]
        return tuple(tuple(cols[j][i] for j in range(self.ambient_dim))
                     for i in range(self.ambient_dim))

    # -- dominance and the weight lattice -----------------------------------

    def is_dominant(self, w: Vector) -> bool:
        return all(self.inner(w, a) >= 0 for a in self.simple_roots)

    def is_integral(self, w: Vector) -> bool:
        """Membership in the weight lattice.

        Reduced factors: integer Cartan pairings with the simple roots.
        BC and torus factors: integer coordinates.
        """
        self._check_dim(w)
        for f in self.factors:
            block = f.coords(w)
            if f.family in ("BC", "T"):
                if any(Fraction(c).denominator != 1 for c in block):
                    return False
        for a in self.simple_roots:
            if Fraction(self.pairing(w, a)).denominator != 1:
                return False
        return True

    def is_dominant_integral(self, w: Vector) -> bool:
        return self.is_integral(w) and self.is_dominant(w)

    def dynkin_labels(self, w: Vector) -> Vector:
        """Per-factor Dynkin labels; torus factors contribute raw coordinates."""
        self._check_dim(w)
        labels = []
        for f in self.factors:
            if f.family == "T":
                labels.extend(f.coords(w))
            elif f.family == "BC":
                raise GroupSpecError("BC factors have no Dynkin labels")
            else:
                for a in f.simple_roots():
                    labels.append(self.pairing(w, _embed(a, f.offset, self.ambient_dim)))
        return tuple(labels)

    @property
    def fundamental_weights(self) -> tuple:
        """Weight-lattice generators, in label order (torus: unit charges)."""
        out = []
        for f in self.factors:
            if f.family == "T":
                out.extend(_embed(_unit(f.dim, i), f.offset, self.ambient_dim)
                           for i in range(f.dim))
            else:
                out.extend(_embed(v, f.offset, self.ambient_dim)
                           for v in f.fundamental_weights())
        return tuple(out)

    def weight_from_labels(self, labels: Sequence[Rational]) -> Vector:
        funds = self.fundamental_weights
        if len(labels) != len(funds):
            raise WeightError(f"expected {len(funds)} labels for {self.spec}, "
                              f"got {len(labels)}")
        w = tuple(0 for _ in range(self.ambient_dim))
        for c, v in zip(labels, funds):
            w = vadd(w, vscale(rat(c), v))
        return self.canon(w)

    @property
    def zero(self) -> Vector:
        return tuple(0 for _ in range(self.ambient_dim))

    # -- Weyl group actions (closure under simple reflections) --------------

    def weyl_orbit(self, w: Vector) -> frozenset:
        return _weyl_orbit(self, self.canon(w))

    def dominant_rep(self, w: Vector) -> Vector:
        """The unique dominant element of the Weyl orbit of ``w``."""
        w = self.canon(w)
        moved = True
        while moved:
            moved = False
            for a in self.simple_roots:
                if self.inner(w, a) < 0:
                    w = self.reflect(w, a)
                    moved = True
        return w

    def rho_alternating_set(self) -> dict:
        """Map ``rho - w(rho) -> sign(w)`` over the full Weyl group.

        This is the support of the Weyl denominator, used for exact
        trivial-isotypic (fixed-vector) extraction from restricted
        characters.
        """
        return _rho_alternating_set(self)


@lru_cache(maxsize=None)
def _weyl_orbit(rs: RootSystem, w: Vector) -> frozenset:
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for a in rs.simple_roots:
                r = rs.reflect(v, a)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=None)
def _rho_alternating_set(rs: RootSystem) -> dict:
    rho = rs.weyl_vector
    # rho is strictly dominant for the semisimple part, so its stabilizer is
    # trivial and the sign of the acting element is well defined per image.
    signs = {rho: 1}
    frontier = [rho]
    while frontier:
        nxt = []
        for v in frontier:
            for a in rs.simple_roots:
                r = rs.reflect(v, a)
                if r not in signs:
                    signs[r] = -signs[v]
                    nxt.append(r)
        frontier = nxt
    return {vsub(rho, v): s for v, s in signs.items()}


_SPEC_RE = re.compile(r"(BC|A|B|C|D|T)\s*(\d+)", re.IGNORECASE)


def build_root_system(family: str, rank: int,
                      metric_scale: Rational = 1) -> RootSystem:
    """Build a single-factor root system (families A, B, C, D, BC, T)."""
    return RootSystem([(family, rank)], metric_scale=metric_scale)


def parse_group(spec: str, metric_scale: Rational = 1) -> RootSystem:
    """Parse a group spec string like ``"A2"``, ``"bc2"`` or ``"A3xT1"``."""
    factors = []
    for token in spec.strip().split("x"):
        m = _SPEC_RE.fullmatch(token.strip())
        if not m:
            raise GroupSpecError(f"cannot parse group spec {token!r}")
        factors.append((m.group(1).upper(), int(m.group(2))))
    return RootSystem(factors, metric_scale=metric_scale)
