"""Graded pieces of the toric coordinate ring of a normal lattice polytope.

The degree-``nu`` piece has the lattice points of ``nu * P`` as a basis, and
multiplication adds exponents.  Relations among the generators are implicit
in that identification and never written down.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactpoly import MultiPoly, _norm
from .lattice import LatticePolytope, Point, is_normal, lattice_points


class NonNormalPolytope(ValueError):
    pass


class SupportError(ValueError):
    pass


class RingMismatch(ValueError):
    pass


class ToricRing:
    def __init__(self, polytope: LatticePolytope, normality_bound: Optional[int] = None):
        if not is_normal(polytope, normality_bound):
            raise NonNormalPolytope(f"polytope {polytope} is not normal; refusing to build ring")
        self.polytope = polytope
        self.dim = polytope.dim
        self._bases: Dict[int, Tuple[List[Point], Dict[Point, int]]] = {}
        self._lock = threading.Lock()

    def _piece(self, nu: int):
        got = self._bases.get(nu)
        if got is None:
            pts = lattice_points(self.polytope, nu)
            got = (pts, {p: i for i, p in enumerate(pts)})
            with self._lock:
                got = self._bases.setdefault(nu, got)
        return got

    def basis(self, nu: int) -> List[Point]:
        if nu < 0:
            return []
        return self._piece(nu)[0]

    def index(self, nu: int) -> Dict[Point, int]:
        return self._piece(nu)[1]

    def hilbert(self, nu: int) -> int:
        return len(self.basis(nu)) if nu >= 0 else 0

    def one(self) -> "GradedElement":
        return GradedElement(self, 0, (1,))

    def __repr__(self):
        return f"ToricRing({self.polytope})"


@dataclass(frozen=True)
class GradedElement:
    ring: ToricRing
    degree: int
    coeffs: Tuple

    def __post_init__(self):
        if len(self.coeffs) != self.ring.hilbert(self.degree):
            raise ValueError("coefficient vector length does not match the graded piece")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def nonzero(self):
        basis = self.ring.basis(self.degree)
        return [(basis[i], c) for i, c in enumerate(self.coeffs) if c]

    def __add__(self, other: "GradedElement"):
        _same(self, other)
        if self.degree != other.degree:
            raise ValueError("adding elements of different degree")
        return GradedElement(self.ring, self.degree,
                             tuple(_norm(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "GradedElement":
        return GradedElement(self.ring, self.degree, tuple(_norm(a * c) for a in self.coeffs))

    def __mul__(self, other: "GradedElement"):
        return multiply(self, other)


def _same(a: GradedElement, b: GradedElement):
    if a.ring is not b.ring:
        raise RingMismatch("elements live in different rings")


def homogenize(ring: ToricRing, p: MultiPoly, degree: int,
               shift: Optional[Sequence[int]] = None) -> GradedElement:
    """Place the coefficient of ``s^alpha`` at basis point ``alpha - shift`` of ``degree``."""
    if p.nvars != ring.dim:
        raise ValueError("polynomial has the wrong number of parameters")
    shift = tuple(shift) if shift is not None else (0,) * ring.dim
    index = ring.index(degree)
    coeffs = [0] * len(index)
    for e, c in p.terms.items():
        pt = tuple(a - s for a, s in zip(e, shift))
        i = index.get(pt)
        if i is None:
            raise SupportError(f"monomial {e} lies outside degree-{degree} piece")
        coeffs[i] = c
    return GradedElement(ring, degree, tuple(coeffs))


def dehomogenize(e: GradedElement, roster: Optional[Sequence[str]] = None,
                 shift: Optional[Sequence[int]] = None) -> MultiPoly:
    roster = roster or tuple(f"s{i + 1}" for i in range(e.ring.dim))
    shift = tuple(shift) if shift is not None else (0,) * e.ring.dim
    terms = {}
    for pt, c in e.nonzero():
        terms[tuple(a + s for a, s in zip(pt, shift))] = c
    return MultiPoly(terms, roster)


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    _same(a, b)
    ring = a.ring
    deg = a.degree + b.degree
    index = ring.index(deg)
    out = [0] * len(index)
    bn = b.nonzero()
    for u, cu in a.nonzero():
        for v, cv in bn:
            w = tuple(x + y for x, y in zip(u, v))
            out[index[w]] += cu * cv
    return GradedElement(ring, deg, tuple(_norm(c) if isinstance(c, Fraction) else c for c in out))


def hilbert(ring: ToricRing, nu: int) -> int:
    return ring.hilbert(nu)
