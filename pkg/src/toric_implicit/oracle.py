"""Deliberately naive reference implementations used to cross-check the pipeline.

Nothing here is called by the main code path.  The resultant is a dense
Sylvester determinant evaluated on an integer grid and interpolated back;
normality is an exhaustive sumset computation against a floating-point hull
from scipy.  Both are independent of the exact machinery in ``lattice``,
``linalg`` and ``implicit``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull

from .exactpoly import MultiPoly


class DegenerateImage(ValueError):
    pass


# ---------------------------------------------------------------------------
# plain Gaussian elimination, kept separate from linalg on purpose


def _det(m: List[List[Fraction]]) -> Fraction:
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _vandermonde_inverse(nodes: Sequence[int]) -> List[List[Fraction]]:
    n = len(nodes)
    aug = [[Fraction(x) ** j for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
           for i, x in enumerate(nodes)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        lead = aug[c][c]
        aug[c] = [x / lead for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _coefficients_in(p: MultiPoly, i: int) -> Dict[int, MultiPoly]:
    out: Dict[int, Dict] = {}
    for e, c in p.terms.items():
        rest = e[:i] + (0,) + e[i + 1:]
        out.setdefault(e[i], {})[rest] = c
    return {k: MultiPoly(v, p.roster) for k, v in out.items()}


# ---------------------------------------------------------------------------
# resultants


def sylvester_resultant(a: MultiPoly, b: MultiPoly, var: str = "s") -> MultiPoly:
    """``Res_var(a, b)`` as a polynomial in the remaining variables of the roster.

    The result keeps the full roster; ``var`` simply does not occur in it.
    """
    if a.roster != b.roster:
        raise ValueError("roster mismatch")
    i = a.roster.index(var)
    m, n = a.degree(i), b.degree(i)
    if m == 0 and n == 0:
        raise ValueError("both polynomials are constant in the elimination variable")
    ca, cb = _coefficients_in(a, i), _coefficients_in(b, i)
    others = [j for j in range(len(a.roster)) if j != i]
    size = m + n
    if m == 0:
        return a ** n
    if n == 0:
        return b ** m
    # total degree bound per variable: n rows of a-coefficients, m rows of b
    bound = {}
    for j in others:
        da = max((c.degree(j) for c in ca.values()), default=0)
        db = max((c.degree(j) for c in cb.values()), default=0)
        bound[j] = n * da + m * db
    nodes = {j: list(range(bound[j] + 1)) for j in others}
    zero = MultiPoly.zero(a.roster)

    def sylvester_at(point) -> List[List[Fraction]]:
        va = [Fraction(ca.get(k, zero).eval(point)) for k in range(m, -1, -1)]
        vb = [Fraction(cb.get(k, zero).eval(point)) for k in range(n, -1, -1)]
        rows = []
        for r in range(n):
            rows.append([Fraction(0)] * r + va + [Fraction(0)] * (size - m - 1 - r))
        for r in range(m):
            rows.append([Fraction(0)] * r + vb + [Fraction(0)] * (size - n - 1 - r))
        return rows

    grid = {}
    for combo in itertools.product(*(nodes[j] for j in others)):
        point = [0] * len(a.roster)
        for j, v in zip(others, combo):
            point[j] = v
        grid[combo] = _det(sylvester_at(point))
    # tensor interpolation, one axis at a time
    for axis, j in enumerate(others):
        inv = _vandermonde_inverse(nodes[j])
        new = {}
        for key in grid:
            if key[axis] != 0:
                continue
            line = [grid[key[:axis] + (v,) + key[axis + 1:]] for v in nodes[j]]
            for deg in range(len(nodes[j])):
                new[key[:axis] + (deg,) + key[axis + 1:]] = sum(
                    (inv[deg][k] * line[k] for k in range(len(line))), Fraction(0))
        grid = new
    terms = {}
    for key, c in grid.items():
        if c:
            e = [0] * len(a.roster)
            for j, d in zip(others, key):
                e[j] = d
            terms[tuple(e)] = c
    return MultiPoly(terms, a.roster)


@dataclass
class CurveSpec:
    """A plane curve ``s -> (x(s), y(s))`` in one of two target conventions.

    ``projective``: ``coords = (p, q, r)`` with ``x = p/r, y = q/r``.
    ``multiprojective``: ``coords = ((f1, g1), (f2, g2))`` with ``x = f1/g1``.
    Polynomials are univariate over the roster ``(var,)``.
    """

    target: str
    coords: Tuple
    var: str = "s"


def curve_implicit(spec: CurveSpec) -> MultiPoly:
    """Power of the implicit equation, ``F^deg``, content-normalized.

    Projective output lives in ``(X1, X2)`` (affine chart ``X0 = 1``),
    multiprojective output in ``(X1, Y1, X2, Y2)``.
    """
    s = spec.var
    if spec.target == "projective":
        roster = (s, "X1", "X2")
        p, q, r = (c.change_roster(roster) for c in spec.coords)
        X1, X2 = MultiPoly.var("X1", roster), MultiPoly.var("X2", roster)
        a, b = p - X1 * r, q - X2 * r
        out_roster = ("X1", "X2")
    elif spec.target == "multiprojective":
        roster = (s, "X1", "Y1", "X2", "Y2")
        (f1, g1), (f2, g2) = ((a.change_roster(roster), b.change_roster(roster))
                              for a, b in spec.coords)
        V = {v: MultiPoly.var(v, roster) for v in roster[1:]}
        a, b = V["Y1"] * f1 - V["X1"] * g1, V["Y2"] * f2 - V["X2"] * g2
        out_roster = roster[1:]
    else:
        raise ValueError(f"unknown target {spec.target!r}")
    if a.degree(s) == 0 and b.degree(s) == 0:
        raise DegenerateImage("the map is constant: the image is a point")
    res = sylvester_resultant(a, b, s)
    if res.is_zero():
        raise DegenerateImage("resultant vanishes identically: the image is not a curve")
    return res.change_roster(out_roster).primitive()


# ---------------------------------------------------------------------------
# normality


def _hull_contains(points: np.ndarray, eqs: Optional[np.ndarray], lo, hi, x) -> bool:
    if eqs is None:
        return bool(np.all(x >= lo) and np.all(x <= hi))
    return bool(np.all(eqs[:, :-1] @ x + eqs[:, -1] <= 1e-9))


def normality_sumset(vertices: Sequence[Sequence[int]], m: int) -> bool:
    """Every lattice point of ``m*P`` is a sum of ``m`` lattice points of ``P``.

    ``P`` must be full-dimensional in dimension >= 2 (segments and points are
    always normal and are handled directly).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    V = np.array(vertices, dtype=float)
    dim = V.shape[1]
    if dim == 1 or len(V) <= 2:
        return True
    hull = ConvexHull(V)
    eqs = hull.equations

    def points_of(k):
        lo = np.floor(k * V.min(axis=0)).astype(int)
        hi = np.ceil(k * V.max(axis=0)).astype(int)
        scaled = eqs.copy()
        scaled[:, -1] *= k
        out = set()
        for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if _hull_contains(V, scaled, None, None, np.array(x, dtype=float)):
                out.add(x)
        return out

    base = points_of(1)
    sums = set(base)
    for k in range(2, m + 1):
        sums = {tuple(a + b for a, b in zip(x, y)) for x in sums for y in base}
    return points_of(m) <= sums
