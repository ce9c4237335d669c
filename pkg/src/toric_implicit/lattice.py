"""Lattice polytopes: hulls, dilations, Ehrhart counts and related invariants.

Hulls are computed by direct facet enumeration, which is exact and adequate
for the small ambient dimensions (at most 3) used here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, List, Sequence, Tuple

Point = Tuple[int, ...]


class PolytopeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# small exact linear algebra on integer vectors


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = reduce(math.gcd, (abs(x) for x in v), 0)
    return tuple(x // g for x in v) if g else tuple(v)


def _int_nullspace(vectors: Sequence[Sequence[int]], dim: int) -> List[Tuple[int, ...]]:
    """Primitive integer basis of the orthogonal complement of ``vectors``."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    pivots = []
    rank = 0
    for c in range(dim):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][c]
        rows[rank] = [a / lead for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(c)
        rank += 1
    basis = []
    for free in (c for c in range(dim) if c not in pivots):
        v = [Fraction(0)] * dim
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in v), 1)
        basis.append(_primitive([int(x * den) for x in v]))
    return basis


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(n) if m[0][j]
    )


def _cross(vectors: Sequence[Sequence[int]], dim: int) -> Tuple[int, ...]:
    """Generalized cross product of ``dim - 1`` vectors."""
    rows = [list(v) for v in vectors]
    return tuple(
        (-1) ** j * _det([row[:j] + row[j + 1:] for row in rows]) for j in range(dim)
    )


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------


class LatticePolytope:
    """Convex hull of finitely many integer points.

    Attributes
    ----------
    dim : ambient dimension
    vertices : sorted tuple of extreme points
    equations : list of ``(normal, value)`` with ``normal . x == value``
    facets : list of ``(normal, bound)`` with ``normal . x <= bound``
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise PolytopeError("a polytope needs at least one point")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise PolytopeError("points of mixed dimension")
        self.dim = dims.pop()
        p0 = pts[0]
        diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
        nonzero = [v for v in diffs if any(v)]
        self.affine_dim = _rank(nonzero) if nonzero else 0
        eq_normals = _int_nullspace(nonzero, self.dim) if nonzero else [
            tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim)]
        self.equations = [(n, _dot(n, p0)) for n in eq_normals]
        self.facets = self._enumerate_facets(pts, eq_normals)
        self.vertices = tuple(v for v in pts if self._is_vertex(v, eq_normals))

    def _enumerate_facets(self, pts, eq_normals):
        r = self.affine_dim
        if r == 0:
            return []
        facets = {}
        for combo in itertools.combinations(pts, r):
            q0 = combo[0]
            vecs = [tuple(a - b for a, b in zip(q, q0)) for q in combo[1:]] + list(eq_normals)
            n = _cross(vecs, self.dim)
            if not any(n):
                continue
            n = _primitive(n)
            b = _dot(n, q0)
            vals = [_dot(n, p) for p in pts]
            if all(v <= b for v in vals):
                facets[n] = b
            elif all(v >= b for v in vals):
                facets[tuple(-x for x in n)] = -b
        return sorted(facets.items())

    def _is_vertex(self, v, eq_normals) -> bool:
        tight = [n for n, b in self.facets if _dot(n, v) == b] + list(eq_normals)
        if not tight:
            return self.dim == 0
        return _rank(tight) == self.dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def contains(self, x: Sequence[int], k: int = 1) -> bool:
        """Membership of ``x`` in the dilation ``k * P``."""
        return all(_dot(n, x) == k * c for n, c in self.equations) and all(
            _dot(n, x) <= k * b for n, b in self.facets)

    def contains_interior(self, x: Sequence[int], k: int = 1) -> bool:
        return all(_dot(n, x) == k * c for n, c in self.equations) and all(
            _dot(n, x) < k * b for n, b in self.facets)

    def bounding_box(self, k: int = 1):
        lo = [k * min(v[j] for v in self.vertices) for j in range(self.dim)]
        hi = [k * max(v[j] for v in self.vertices) for j in range(self.dim)]
        return lo, hi

    def scaled(self, k: int) -> "LatticePolytope":
        return LatticePolytope([tuple(k * x for x in v) for v in self.vertices])

    def translated(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope([tuple(x + y for x, y in zip(v, t)) for v in self.vertices])

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __str__(self):
        return "[" + ",".join("(" + ",".join(map(str, v)) + ")" for v in self.vertices) + "]"

    def __repr__(self):
        return f"LatticePolytope({self})"


def newton_polytope(spec) -> LatticePolytope:
    """Hull of the union of supports of every numerator and denominator.

    ``spec`` is a :class:`~toric_implicit.strands.MapSpec` or any iterable of
    polynomials.
    """
    polys = []
    if hasattr(spec, "coordinates"):
        for num, den in spec.coordinates:
            polys.extend([num, den])
    else:
        polys = list(spec)
    if not polys:
        raise PolytopeError("no polynomials given")
    support = []
    for p in polys:
        if p.is_zero():
            raise PolytopeError("zero polynomial in input")
        support.extend(p.support())
    return LatticePolytope(support)


def _gradedlex(p: Point):
    return (sum(p), p)


@lru_cache(maxsize=512)
def _lattice_points_cached(P: LatticePolytope, k: int) -> Tuple[Point, ...]:
    lo, hi = P.bounding_box(k)
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    pts = [x for x in itertools.product(*ranges) if P.contains(x, k)]
    pts.sort(key=_gradedlex)
    return tuple(pts)


def lattice_points(P: LatticePolytope, k: int = 1) -> List[Point]:
    """Integer points of ``k * P`` in graded-lex order."""
    if k < 0:
        raise ValueError("dilation factor must be non-negative")
    return list(_lattice_points_cached(P, k))


def ehrhart(P: LatticePolytope, k: int) -> int:
    return len(_lattice_points_cached(P, k))


def interior_points(P: LatticePolytope, k: int = 1) -> List[Point]:
    return [x for x in _lattice_points_cached(P, k) if P.contains_interior(x, k)]


def ehrhart_interior(P: LatticePolytope, k: int) -> int:
    return len(interior_points(P, k))


def gamma(P: LatticePolytope) -> int:
    """Largest dilation index whose dilation has no interior lattice point."""
    if not P.is_full_dimensional:
        raise PolytopeError("gamma needs a full-dimensional polytope")
    for i in range(P.dim + 3):
        if ehrhart_interior(P, i) > 0:
            return i - 1
    raise PolytopeError("no interior points up to dim+2; polytope is degenerate")


def is_normal(P: LatticePolytope, up_to: int | None = None) -> bool:
    """Bounded normality check: each point of ``m*P`` splits as point of P + point of ``(m-1)*P``.

    Checking ``m = 2..up_to`` inductively certifies that ``m*P ∩ Z^n`` equals the
    ``m``-fold sumset of ``P ∩ Z^n`` for those ``m``.
    """
    if up_to is None:
        up_to = P.dim + 1
    if up_to < 2 or P.affine_dim <= 1:
        return True
    base = lattice_points(P, 1)
    for m in range(2, up_to + 1):
        for x in lattice_points(P, m):
            if not any(P.contains(tuple(a - b for a, b in zip(x, y)), m - 1) for y in base):
                return False
    return True


@dataclass(frozen=True)
class Contraction:
    """``original = factor * base + shift`` with ``base`` a lattice polytope."""

    base: LatticePolytope
    factor: int
    shift: Point


def contract(P: LatticePolytope) -> Contraction:
    """Smallest lattice contraction, allowing a lattice translation."""
    v0 = P.vertices[0]
    d = 0
    for v in P.vertices[1:]:
        for a, b in zip(v, v0):
            d = math.gcd(d, a - b)
    d = abs(d) or 1
    shift = tuple(x % d for x in v0)
    base = LatticePolytope(
        [tuple((a - s) // d for a, s in zip(v, shift)) for v in P.vertices])
    return Contraction(base, d, shift)


def _hnf_rows(vectors: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Row Hermite basis of the integer span of ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for c in range(dim):
        live = [r for r in rows if r[c] != 0]
        if not live:
            continue
        # gcd-reduce the column by repeated division
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            for r in live[1:]:
                q = r[c] // piv[c]
                for j in range(dim):
                    r[j] -= q * piv[j]
            live = [piv] + [r for r in live[1:] if r[c] != 0]
        piv = live[0]
        if piv[c] < 0:
            piv[:] = [-x for x in piv]
        basis.append(piv)
        rows = [r for r in rows if r is not piv and any(r)]
    return basis


@dataclass(frozen=True)
class LatticeReduction:
    """Affine change of coordinates onto the lattice spanned by a support.

    ``alpha = origin + c . basis`` for exponents ``alpha`` of the support;
    ``index`` is the index of that lattice in ``Z^n`` (1 when nothing changes).
    """

    origin: Point
    basis: Tuple[Point, ...]
    index: int

    def apply(self, alpha: Sequence[int]) -> Point:
        diff = [a - o for a, o in zip(alpha, self.origin)]
        n = len(diff)
        # solve c . basis = diff; basis is upper triangular by construction
        c = [Fraction(0)] * n
        rest = [Fraction(x) for x in diff]
        for i, row in enumerate(self.basis):
            lead = next(j for j in range(n) if row[j])
            c[i] = rest[lead] / row[lead]
            rest = [x - c[i] * y for x, y in zip(rest, row)]
        if any(rest) or any(x.denominator != 1 for x in c):
            raise PolytopeError(f"{tuple(alpha)} is not in the support lattice")
        return tuple(int(x) for x in c)


def reduce_lattice(points: Sequence[Sequence[int]]) -> LatticeReduction:
    """Reduction onto the affine lattice generated by ``points``.

    When the lattice is all of ``Z^n`` the identity is returned.  Lower-rank
    supports are left alone as well.
    """
    pts = sorted({tuple(p) for p in points})
    dim = len(pts[0])
    origin = tuple(min(p[j] for p in pts) for j in range(dim))
    identity = LatticeReduction(origin, tuple(
        tuple(int(i == j) for j in range(dim)) for i in range(dim)), 1)
    diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
    basis = _hnf_rows(diffs, dim)
    if len(basis) < dim:
        return identity
    index = abs(_det(basis))
    if index == 1:
        return identity
    red = LatticeReduction(pts[0], tuple(tuple(r) for r in basis), index)
    images = [red.apply(p) for p in pts]
    low = tuple(min(c[j] for c in images) for j in range(dim))
    # shift the origin so that reduced exponents start at zero
    origin = tuple(pts[0][j] + sum(low[i] * basis[i][j] for i in range(dim)) for j in range(dim))
    return LatticeReduction(origin, red.basis, index)


@dataclass(frozen=True)
class EmbeddingComparison:
    d: int
    gamma: int
    gamma_contracted: int
    delta: int
    nu0: int
    nu0_contracted: int
    rows: int
    rows_contracted: int
    prefer_contracted: bool

    @property
    def closed_form(self) -> bool:
        """Closed-form predictor of ``prefer_contracted``: ``delta < d - 1``."""
        return self.delta < self.d - 1


def compare_embeddings(P: LatticePolytope) -> EmbeddingComparison:
    """Compare matrix row counts for the embeddings given by ``P`` and its contraction.

    For degree-one maps on ``P`` the bound is ``nu0 = dim - gamma``; on the
    contraction the maps have degree ``d`` and ``nu0' = d*dim - gamma'``.
    ``prefer_contracted`` is the direct comparison ``E_P(nu0) > E_P'(nu0')``.
    """
    c = contract(P)
    g = gamma(P)
    gc = gamma(c.base)
    delta = c.factor * (g + 1) - (gc + 1)
    nu0 = P.dim - g
    nu0c = c.factor * P.dim - gc
    rows = ehrhart(P, nu0)
    rows_c = ehrhart(c.base, nu0c)
    return EmbeddingComparison(c.factor, g, gc, delta, nu0, nu0c, rows, rows_c, rows > rows_c)
