"""Representation matrices and graded Koszul strands.

Two compactifications of the target are supported:

* ``projective``: the map is brought to a common denominator and written as
  ``(h_0 : ... : h_n)`` with all ``h_i`` of one degree ``d`` on the contracted
  polytope.  The matrix ``M_nu`` has one column per linear syzygy of degree
  ``nu``.
* ``multiprojective``: each coordinate keeps its own pair ``(f_i, g_i)`` and
  the matrix is the last differential of the Koszul complex on
  ``L_i = Y_i f_i - X_i g_i`` restricted to degree ``nu``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactpoly import MultiPoly, _norm, poly_divexact, poly_gcd, poly_lcm
from .lattice import (LatticePolytope, LatticeReduction, contract, gamma, lattice_points,
                      newton_polytope, reduce_lattice)
from .linalg import echelon_mod_p, nullspace, random_prime, to_mod_p
from .toricring import GradedElement, ToricRing, homogenize, multiply

LinearForm = Dict[int, object]  # variable index -> nonzero coefficient


class HypothesisFailure(RuntimeError):
    """A genericity / acyclicity hypothesis could not be confirmed numerically."""


class NotAHypersurface(ValueError):
    pass


# ---------------------------------------------------------------------------
# map specifications


class MapSpec:
    """A parsed affine rational map ``s -> (f_1/g_1, ..., f_n/g_n)``.

    Construction derives everything the matrix builders need: the polytope,
    its contraction, the toric ring and the graded elements of the chosen
    compactification.  When all exponents lie on a proper sublattice (say
    only even powers of a variable occur) the exponents are first rewritten
    in a basis of that sublattice, so the map is not counted as a cover;
    ``reduce=False`` keeps the raw exponents.
    """

    def __init__(self, params: Sequence[str], target: str,
                 coordinates: Sequence[Tuple[MultiPoly, MultiPoly]],
                 normality_bound: Optional[int] = None, reduce: bool = True):
        if target not in ("projective", "multiprojective"):
            raise ValueError(f"unknown target {target!r}")
        self.params = tuple(params)
        self.target = target
        if len(coordinates) != len(self.params) + 1:
            raise NotAHypersurface(
                f"not a hypersurface parametrization: {len(coordinates)} coordinates "
                f"for {len(self.params)} parameters")
        coords = []
        for num, den in coordinates:
            if num.is_zero() or den.is_zero():
                raise ValueError("numerators and denominators must be nonzero")
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = poly_divexact(num, g), poly_divexact(den, g)
            coords.append((num, den))
        self.coordinates = coords
        self.n = len(coords)
        self.reduce = reduce
        self.newton = newton_polytope(coords_polys(coords))
        if target == "projective":
            self._derive_projective(normality_bound)
        else:
            self._derive_multiprojective(normality_bound)

    @property
    def x_roster(self) -> Tuple[str, ...]:
        if self.target == "projective":
            return tuple(f"X{i}" for i in range(self.n + 1))
        return tuple(v for i in range(1, self.n + 1) for v in (f"X{i}", f"Y{i}"))

    def _derive_projective(self, normality_bound):
        common = self.coordinates[0][1]
        for _, den in self.coordinates[1:]:
            common = poly_lcm(common, den)
        hs = [common] + [num * poly_divexact(common, den) for num, den in self.coordinates]
        self.affine_h = hs
        self.reduction = self._reduction([e for h in hs for e in h.support()])
        hs = [_reduce_poly(h, self.reduction) for h in hs]
        self.polytope = newton_polytope(hs)
        c = contract(self.polytope)
        self.contraction = c
        self.ring = ToricRing(c.base, normality_bound)
        self.degree = c.factor
        self.shift = c.shift
        self.h = [homogenize(self.ring, p, self.degree, self.shift) for p in hs]

    def _derive_multiprojective(self, normality_bound):
        self.reduction = self._reduction(
            [e for p in coords_polys(self.coordinates) for e in p.support()])
        pairs = [(_reduce_poly(a, self.reduction), _reduce_poly(b, self.reduction))
                 for a, b in self.coordinates]
        self.polytope = newton_polytope(coords_polys(pairs))
        c = contract(self.polytope)
        self.contraction = c
        self.ring = ToricRing(c.base, normality_bound)
        self.degrees = []
        self.shifts = []
        self.f = []
        self.g = []
        for num, den in pairs:
            d, u = _fit_pair(c.base, c.factor, num.support() + den.support())
            self.degrees.append(d)
            self.shifts.append(u)
            self.f.append(homogenize(self.ring, num, d, u))
            self.g.append(homogenize(self.ring, den, d, u))

    def _reduction(self, support) -> LatticeReduction:
        red = reduce_lattice(support)
        if self.reduce or red.index == 1:
            return red
        dim = len(red.origin)
        return LatticeReduction(red.origin, tuple(
            tuple(int(i == j) for j in range(dim)) for i in range(dim)), 1)

    # pushing parameter points forward
    def image_point(self, s: Sequence) -> List[Fraction]:
        """Target coordinates of the parameter point ``s`` in ``x_roster`` order."""
        if self.target == "projective":
            return [Fraction(h.eval(s)) for h in self.affine_h]
        out = []
        for num, den in self.coordinates:
            out.extend([Fraction(num.eval(s)), Fraction(den.eval(s))])
        return out

    def __repr__(self):
        return f"MapSpec({self.target}, params={self.params}, polytope={self.ring.polytope})"


def _reduce_poly(p: MultiPoly, red: LatticeReduction) -> MultiPoly:
    if red.index == 1:
        return p
    return MultiPoly({red.apply(e): c for e, c in p.terms.items()}, p.roster)


def coords_polys(coords):
    for num, den in coords:
        yield num
        yield den


def _fit_pair(base: LatticePolytope, max_degree: int, support) -> Tuple[int, Tuple[int, ...]]:
    """Smallest ``d`` and translation ``u`` with ``support - u`` inside ``d * base``."""
    dim = base.dim
    lo = [min(e[j] for e in support) for j in range(dim)]
    for d in range(1, max_degree + 1):
        blo, bhi = base.bounding_box(d)
        ranges = [range(lo[j] - bhi[j], lo[j] - blo[j] + 1) for j in range(dim)]
        for u in itertools.product(*ranges):
            if all(base.contains(tuple(a - b for a, b in zip(e, u)), d) for e in support):
                return d, tuple(u)
    raise ValueError("pair support does not fit any dilation of the polytope")


# ---------------------------------------------------------------------------
# matrices of linear forms


@dataclass
class LinearFormMatrix:
    """Sparse matrix whose entries are linear forms in ``x_roster``."""

    rows: List
    cols: List
    x_roster: Tuple[str, ...]
    cells: Dict[Tuple[int, int], LinearForm] = field(default_factory=dict)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def add(self, r: int, c: int, var: int, coeff):
        if not coeff:
            return
        cell = self.cells.setdefault((r, c), {})
        v = cell.get(var, 0) + coeff
        if v:
            cell[var] = _norm(v) if isinstance(v, Fraction) else v
        else:
            del cell[var]
            if not cell:
                del self.cells[(r, c)]

    def entry(self, r: int, c: int) -> MultiPoly:
        cell = self.cells.get((r, c), {})
        n = len(self.x_roster)
        return MultiPoly({tuple(int(k == i) for k in range(n)): c for i, c in cell.items()},
                         self.x_roster)

    def to_polys(self) -> List[List[MultiPoly]]:
        return [[self.entry(r, c) for c in range(len(self.cols))] for r in range(len(self.rows))]

    def evaluate(self, point: Sequence) -> List[List]:
        if len(point) != len(self.x_roster):
            raise ValueError("point has the wrong number of coordinates")
        out = [[0] * len(self.cols) for _ in self.rows]
        for (r, c), form in self.cells.items():
            out[r][c] = sum(coef * point[i] for i, coef in form.items())
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LinearFormMatrix":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: j for j, c in enumerate(cols)}
        sub = LinearFormMatrix([self.rows[r] for r in rows], [self.cols[c] for c in cols],
                               self.x_roster)
        for (r, c), form in self.cells.items():
            if r in rpos and c in cpos:
                sub.cells[(rpos[r], cpos[c])] = dict(form)
        return sub

    def is_zero(self) -> bool:
        return not self.cells

    def format_form(self, r: int, c: int) -> str:
        return str(self.entry(r, c))


def compose(a: LinearFormMatrix, b: LinearFormMatrix) -> Dict[Tuple[int, int], Dict]:
    """Product ``a @ b`` as sparse quadratic forms (keys are sorted variable pairs)."""
    if len(a.cols) != len(b.rows):
        raise ValueError("shape mismatch")
    by_row: Dict[int, List] = {}
    for (r, c), form in b.cells.items():
        by_row.setdefault(r, []).append((c, form))
    out: Dict[Tuple[int, int], Dict] = {}
    for (r, k), fa in a.cells.items():
        for c, fb in by_row.get(k, ()):
            cell = out.setdefault((r, c), {})
            for i, x in fa.items():
                for j, y in fb.items():
                    key = (min(i, j), max(i, j))
                    cell[key] = cell.get(key, 0) + x * y
    return {rc: {k: v for k, v in cell.items() if v} for rc, cell in out.items()
            if any(cell.values())}


# ---------------------------------------------------------------------------
# degree bounds


def nu0_projective(ring: ToricRing, n: int, d: int) -> int:
    return max((n - 2) * d, (n - 1) * d - gamma(ring.polytope))


def nu0_multiprojective(ring: ToricRing, degrees: Sequence[int]) -> int:
    return sum(degrees) - gamma(ring.polytope)


def nu0(spec: MapSpec) -> int:
    if spec.target == "projective":
        return nu0_projective(spec.ring, spec.n, spec.degree)
    return nu0_multiprojective(spec.ring, spec.degrees)


# ---------------------------------------------------------------------------
# projective compactification: linear syzygies


def multiplication_matrix(h: Sequence[GradedElement], nu: int) -> List[List]:
    """Matrix of ``(a_0, ..., a_n) -> sum a_i h_i`` from ``A_nu^(n+1)`` to ``A_(nu+d)``."""
    ring = h[0].ring
    d = h[0].degree
    src = ring.basis(nu)
    tgt_index = ring.index(nu + d)
    mat = [[0] * (len(h) * len(src)) for _ in range(len(tgt_index))]
    for i, hi in enumerate(h):
        terms = hi.nonzero()
        for j, m in enumerate(src):
            col = i * len(src) + j
            for pt, c in terms:
                w = tuple(x + y for x, y in zip(m, pt))
                mat[tgt_index[w]][col] += c
    return mat


def syzygy_basis(h: Sequence[GradedElement], nu: int) -> List[Tuple[GradedElement, ...]]:
    """Basis of the degree-``nu`` linear syzygies of ``h``, in reduced echelon order."""
    if nu < 0:
        return []
    ring = h[0].ring
    k = ring.hilbert(nu)
    mat = multiplication_matrix(h, nu)
    kernel = nullspace(mat, len(h) * k)
    out = []
    for v in kernel:
        out.append(tuple(
            GradedElement(ring, nu, tuple(_norm(x) for x in v[i * k:(i + 1) * k]))
            for i in range(len(h))))
    return out


def build_matrix_projective(spec: MapSpec, nu: int) -> LinearFormMatrix:
    if spec.target != "projective":
        raise ValueError("spec is not projective")
    if nu < 0:
        raise ValueError("nu must be non-negative")
    rows = spec.ring.basis(nu)
    syz = syzygy_basis(spec.h, nu)
    M = LinearFormMatrix(list(rows), list(range(len(syz))), spec.x_roster)
    for c, column in enumerate(syz):
        for i, a in enumerate(column):
            for r, x in enumerate(a.coeffs):
                if x:
                    M.add(r, c, i, x)
    M.syzygies = syz
    return M


def verify_syzygies(spec: MapSpec, syzygies) -> bool:
    for column in syzygies:
        total = None
        for a, h in zip(column, spec.h):
            prod = multiply(a, h)
            total = prod if total is None else total + prod
        if not total.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# multiprojective compactification: Koszul strand


@dataclass
class KoszulStrand:
    """Degree-``nu`` strand ``0 -> K_n -> ... -> K_1 -> K_0`` of the Koszul complex.

    ``maps[p - 1]`` is the differential ``K_p -> K_(p-1)``; ``maps[0]`` is
    the representation matrix ``M_nu``.
    """

    nu: int
    terms: List[int]
    labels: List[List]
    maps: List[LinearFormMatrix]
    x_roster: Tuple[str, ...]

    @property
    def matrix(self) -> LinearFormMatrix:
        return self.maps[0]


def build_koszul_strand(spec: MapSpec, nu: int) -> KoszulStrand:
    if spec.target != "multiprojective":
        raise ValueError("spec is not multiprojective")
    if nu < 0:
        raise ValueError("nu must be non-negative")
    ring, n = spec.ring, spec.n
    labels: List[List] = []
    for p in range(n + 1):
        lab = []
        for S in itertools.combinations(range(n), p):
            deg = nu - sum(spec.degrees[i] for i in S)
            lab.extend((S, m) for m in ring.basis(deg))
        labels.append(lab)
    positions = [{lab: i for i, lab in enumerate(level)} for level in labels]
    roster = spec.x_roster
    maps = []
    for p in range(1, n + 1):
        M = LinearFormMatrix(labels[p - 1], labels[p], roster)
        tgt = positions[p - 1]
        for c, (S, m) in enumerate(labels[p]):
            for j, i in enumerate(S):
                sign = -1 if j % 2 else 1
                rest = S[:j] + S[j + 1:]
                for pt, coef in spec.f[i].nonzero():
                    w = tuple(a + b for a, b in zip(m, pt))
                    M.add(tgt[(rest, w)], c, 2 * i + 1, sign * coef)      # Y_i f_i
                for pt, coef in spec.g[i].nonzero():
                    w = tuple(a + b for a, b in zip(m, pt))
                    M.add(tgt[(rest, w)], c, 2 * i, -sign * coef)         # -X_i g_i
        maps.append(M)
    return KoszulStrand(nu, [len(level) for level in labels], labels, maps, roster)


def strand_is_complex(strand: KoszulStrand) -> bool:
    """Consecutive differentials compose to zero, checked symbolically."""
    return all(not compose(strand.maps[p], strand.maps[p + 1])
               for p in range(len(strand.maps) - 1))


def koszul_term_dims(spec: MapSpec, nu: int) -> List[int]:
    """``dim (K_p)_nu`` from the Hilbert function alone."""
    return [
        sum(spec.ring.hilbert(nu - sum(spec.degrees[i] for i in S))
            for S in itertools.combinations(range(spec.n), p))
        for p in range(spec.n + 1)
    ]


def build_matrix(spec: MapSpec, nu: int) -> LinearFormMatrix:
    if spec.target == "projective":
        return build_matrix_projective(spec, nu)
    return build_koszul_strand(spec, nu).matrix


# ---------------------------------------------------------------------------
# numeric rank


def random_point(rng: random.Random, n: int, bound: int = 97) -> List[Fraction]:
    """Rational point with nonzero numerators and denominators in ``[-bound, bound]``."""
    def one():
        num = rng.choice([x for x in range(-bound, bound + 1) if x])
        den = rng.randint(1, bound)
        return Fraction(num, den)
    return [one() for _ in range(n)]


def numeric_rank(values: Sequence[Sequence], rng: random.Random, primes: int = 3) -> int:
    """Rank of a rational matrix.

    Each prime gives a lower bound that is exact as a certificate of full
    rank; the maximum over ``primes`` random 31-bit primes equals the rank
    over Q unless every prime divides all maximal nonzero minors.
    """
    rows = len(values)
    cols = len(values[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    best = 0
    for _ in range(primes):
        p = random_prime(rng)
        try:
            r = len(echelon_mod_p(to_mod_p(values, p), p))
        except ZeroDivisionError:
            continue
        best = max(best, r)
        if best == min(rows, cols):
            break
    return best


def generic_rank(M: LinearFormMatrix, seed: int = 0, points: int = 3) -> int:
    rng = random.Random(seed)
    if M.is_zero():
        return 0
    full = min(M.shape)
    best = 0
    for _ in range(points):
        x = random_point(rng, len(M.x_roster))
        best = max(best, numeric_rank(M.evaluate(x), rng))
        if best == full:
            break
    return best


def require_generic_full_rank(M: LinearFormMatrix, seed: int = 0) -> None:
    r = generic_rank(M, seed)
    if r != len(M.rows):
        raise HypothesisFailure(
            f"M has generic rank {r} < {len(M.rows)} rows: the acyclicity / base-locus "
            "hypotheses (generic full rank of the representation matrix) are not met; "
            "try a larger nu")
