"""Torus-aligned embeddings as weight-lattice restriction maps.

A :class:`RestrictionMap` carries an exact rational matrix sending ambient
epsilon-coordinates of the source group G to those of the target subgroup
H.  Matrices act on canonical (zero-sum for type A) source coordinates and
their images are canonicalized on the target, so simple integer matrices
suffice for the bundled embeddings.  Lattice compatibility is verified once
at construction on the source lattice generators, which by linearity covers
every weight handled later.

The trivial-isotypic dimension ``fixed_dim`` is extracted from the
restricted character with the Weyl-denominator alternating sum over the
target Weyl group; ``branch`` peels the full restricted character instead.
The two routes are independent and are cross-checked in the test suite.

Map file format (line oriented, ``#`` comments)::

    source=D4 target=A3xT1
    1 0 0 0
    0 1 0 0
    0 0 1 0
    0 0 0 1
    1 1 1 1
    check: 1 0 0 0 -> dim 8

Rows are the target-coordinate functionals with space-separated exact
rationals ``p`` or ``p/q``; optional ``check:`` lines name a source irrep
by Dynkin labels and its dimension, and the branch of every check pair is
rerun on load.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InputFormatError, RestrictionMapError, WeightError
from .irreps import (FormalCharacter, decompose_character, freudenthal,
                     weight_multiplicities, weyl_dimension)
from .roots import (RootSystem, Rational, Vector, format_rational, parse_group,
                    parse_rational, rat)


class RestrictionMap:
    """An exact linear map of weight lattices realizing H embedded in G."""

    def __init__(self, source: RootSystem, target: RootSystem,
                 matrix: Sequence[Sequence[Rational]], label: str = "",
                 check_pairs: Sequence[Tuple[Sequence[int], int]] = ()):
        self.source = source
        self.target = target
        rows = tuple(tuple(rat(c) for c in row) for row in matrix)
        if len(rows) != target.ambient_dim or any(
                len(r) != source.ambient_dim for r in rows):
            raise RestrictionMapError(
                f"matrix shape must be {target.ambient_dim} x "
                f"{source.ambient_dim} for {source.spec} -> {target.spec}")
        self.matrix = rows
        self.label = label or f"{source.spec}->{target.spec}"
        self.check_pairs = tuple((tuple(lbl), int(dim)) for lbl, dim in check_pairs)
        self._fixed_cache: Dict[Vector, int] = {}
        for gen in source.fundamental_weights:
            img = self.apply(gen)
            if not target.is_integral(img):
                raise RestrictionMapError(
                    f"map {self.label}: image {img} of lattice generator {gen} "
                    f"is not in the {target.spec} weight lattice")

    def apply(self, w: Vector) -> Vector:
        """Image of a source weight, canonicalized on the target."""
        return self.target.canon(tuple(
            sum(c * x for c, x in zip(row, w)) for row in self.matrix))

    @property
    def hash(self) -> str:
        text = f"{self.source.spec}->{self.target.spec};" + ";".join(
            " ".join(format_rational(c) for c in row) for row in self.matrix)
        return hashlib.sha256(text.encode()).hexdigest()[:12]

    def __repr__(self):
        return f"RestrictionMap({self.label!r}, {self.source.spec}->{self.target.spec})"

    def compose_source(self, m: Sequence[Sequence[Rational]],
                       label: str = "") -> "RestrictionMap":
        """This map precomposed with a matrix on source coordinates."""
        n = self.source.ambient_dim
        rows = [[rat(sum(self.matrix[i][k] * m[k][j] for k in range(n)))
                 for j in range(n)] for i in range(self.target.ambient_dim)]
        return RestrictionMap(self.source, self.target, rows,
                              label=label or self.label + "+twist")

    def validate_checks(self):
        for labels, dim in self.check_pairs:
            lam = self.source.weight_from_labels(labels)
            if weyl_dimension(self.source, lam) != dim:
                raise RestrictionMapError(
                    f"map {self.label}: check irrep {list(labels)} has dimension "
                    f"{weyl_dimension(self.source, lam)}, file says {dim}")
            total = sum(m * weyl_dimension(self.target, w)
                        for w, m in branch(lam, self).items())
            if total != dim:
                raise RestrictionMapError(
                    f"map {self.label}: branch of {list(labels)} breaks "
                    f"dimension conservation ({total} != {dim})")


def identity_map(rs: RootSystem, label: str = "identity") -> RestrictionMap:
    eye = [[1 if i == j else 0 for j in range(rs.ambient_dim)]
           for i in range(rs.ambient_dim)]
    return RestrictionMap(rs, rs, eye, label=label)


def trivial_map(rs: RootSystem, label: str = "trivial") -> RestrictionMap:
    """Map onto the trivial (rank zero torus) subgroup."""
    return RestrictionMap(rs, parse_group("T0"), [], label=label)


def restrict_character(char: FormalCharacter, m: RestrictionMap) -> FormalCharacter:
    """Image of a character under the map; total mass is preserved."""
    return char.map_weights(m.apply)


def restrict_irrep(lam: Vector, m: RestrictionMap) -> FormalCharacter:
    """Restricted character of the source irrep V(lam), streamed by orbit."""
    lam = m.source.canon(lam)
    out: Dict[Vector, int] = {}
    for mu, mult in freudenthal(m.source, lam).items():
        for x in m.source.weyl_orbit(mu):
            v = m.apply(x)
            out[v] = out.get(v, 0) + mult
    return FormalCharacter(out)


def branch(lam: Vector, m: RestrictionMap) -> Dict[Vector, int]:
    """Decompose Res V(lam) into target irreps by deterministic peeling."""
    return decompose_character(m.target, restrict_irrep(lam, m))


def fixed_dim(lam: Vector, m: RestrictionMap) -> int:
    """Multiplicity of the trivial target irrep in Res V(lam).

    Equals the alternating sum of restricted multiplicities over the
    support ``rho - w(rho)`` of the target Weyl denominator; for torus
    targets this degenerates to the multiplicity of weight zero.
    """
    lam = m.source.canon(lam)
    cached = m._fixed_cache.get(lam)
    if cached is not None:
        return cached
    if not m.source.is_dominant_integral(lam):
        raise WeightError(f"{lam} is not dominant integral for {m.source.spec}")
    signs = m.target.rho_alternating_set()
    total = 0
    apply = m.apply
    get = signs.get
    for mu, mult in freudenthal(m.source, lam).items():
        for x in m.source.weyl_orbit(mu):
            s = get(apply(x))
            if s is not None:
                total += mult * s
    if total < 0:
        raise RestrictionMapError(
            f"map {m.label}: negative fixed dimension at {lam}; "
            "the matrix is not a valid torus-aligned embedding")
    m._fixed_cache[lam] = total
    return total


def spherical_types(G: RootSystem, k_map: RestrictionMap,
                    cutoff: Rational) -> List[Tuple[Vector, int]]:
    """Dominant weights with Casimir <= cutoff and a nonzero K-fixed vector."""
    from .irreps import enumerate_dominant
    if k_map.source != G:
        raise RestrictionMapError("k_map source differs from the given group")
    out = []
    for lam in enumerate_dominant(G, cutoff):
        f = fixed_dim(lam, k_map)
        if f > 0:
            out.append((lam, f))
    return out


def trivial_fiber_types(K: RootSystem, h_map: RestrictionMap,
                        cutoff: Rational) -> List[Vector]:
    """Irreps of K on which the embedded subgroup H acts trivially.

    These are the types whose restricted character is dim(sigma) copies of
    the zero weight.
    """
    from .irreps import enumerate_dominant
    if h_map.source != K:
        raise RestrictionMapError("h_map source differs from the given group")
    zero = h_map.target.zero
    out = []
    for sigma in enumerate_dominant(K, cutoff):
        ch = restrict_irrep(sigma, h_map)
        if set(ch.terms) == {zero}:
            out.append(sigma)
    return out


# ---------------------------------------------------------------------------
# map files

_HEADER_RE = re.compile(r"source\s*=\s*(\S+)\s+target\s*=\s*(\S+)")
_CHECK_RE = re.compile(r"check:\s*([-\d\s]+?)\s*->\s*dim\s+(\d+)")


def parse_map(text: str, label: str = "") -> RestrictionMap:
    source = target = None
    rows: List[List[Rational]] = []
    checks: List[Tuple[List[int], int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if source is None:
            mh = _HEADER_RE.fullmatch(line)
            if not mh:
                raise InputFormatError(
                    f"map line {lineno}: expected 'source=<spec> target=<spec>'")
            source = parse_group(mh.group(1))
            target = parse_group(mh.group(2))
            continue
        mc = _CHECK_RE.fullmatch(line)
        if mc:
            labels = [int(t) for t in mc.group(1).split()]
            checks.append((labels, int(mc.group(2))))
            continue
        try:
            rows.append([parse_rational(t) for t in line.split()])
        except Exception as exc:
            raise InputFormatError(f"map line {lineno}: {exc}") from exc
    if source is None:
        raise InputFormatError("map file has no header line")
    m = RestrictionMap(source, target, rows, label=label, check_pairs=checks)
    m.validate_checks()
    return m


def load_map(path) -> RestrictionMap:
    from pathlib import Path
    p = Path(path)
    return parse_map(p.read_text(), label=p.stem)
