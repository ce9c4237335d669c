"""Implicit equations from representation matrices.

Two routes are offered.  The symbolic route takes the gcd of maximal minors
of ``M_nu`` and is only feasible for small matrices.  The evaluation route
computes the determinant of the complex at rational points, which is enough
to verify a candidate factorization ``D = c * H^k * G`` and to probe degrees.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .exactpoly import (InexactDivision, MultiPoly, poly_divexact, poly_gcd,
                        same_up_to_scalar)
from .linalg import (SingularMatrix, det_rational, echelon_mod_p, poly_det,
                     random_prime, to_mod_p)
from .strands import (HypothesisFailure, KoszulStrand, LinearFormMatrix,
                      generic_rank, numeric_rank, random_point)

DEFAULT_LIMIT = 12
MAX_EXPONENT = 8


class OverLimit(ValueError):
    """Symbolic computation refused because the matrix exceeds the size guard."""


class DegenerateCandidates(ValueError):
    pass


# ---------------------------------------------------------------------------
# symbolic route


def gcd_maximal_minors(M: LinearFormMatrix, limit: int = DEFAULT_LIMIT,
                       stable: int = 5, seed: int = 0) -> MultiPoly:
    """Gcd of the maximal minors of ``M``, primitive with positive leading coefficient.

    Column subsets are drawn from a seeded generator (the first one from the
    pivot columns at a random point, so it is nonzero).  Subsets whose minor
    vanishes modulo a prime at a random point are skipped before any symbolic
    work.  Neighbouring subsets in lexicographic order share most columns and
    hence spurious common factors, which is why the order is randomized.  The
    sweep stops once the running gcd has been unchanged for ``stable``
    consecutive nonzero minors, or when it becomes constant.
    """
    rows, cols = M.shape
    if rows > cols:
        raise ValueError(f"M has more rows than columns ({rows}x{cols})")
    if rows > limit:
        raise OverLimit(f"{rows} rows exceeds the symbolic limit {limit}; use evaluation mode")
    if rows == 0:
        raise ValueError("empty matrix")
    if generic_rank(M, seed) < rows:
        raise HypothesisFailure("M is not generically of full rank; the gcd of minors is zero")
    polys = M.to_polys()
    g = None
    unchanged = 0
    for combo in _column_subsets(M, seed):
        minor = poly_det([[row[c] for c in combo] for row in polys])
        if minor.is_zero():
            continue
        new = minor.primitive() if g is None else poly_gcd(g, minor)
        if g is not None and same_up_to_scalar(new, g):
            unchanged += 1
        else:
            unchanged = 0
        g = new
        if g.is_constant() or unchanged >= stable:
            break
    return g.primitive()


def _column_subsets(M: LinearFormMatrix, seed: int, tries: int = 5000):
    rows, cols = M.shape
    if rows == cols:
        yield tuple(range(cols))
        return
    rng = random.Random(seed)
    p = random_prime(rng)
    vals = to_mod_p(M.evaluate(random_point(rng, len(M.x_roster))), p)
    first = tuple(echelon_mod_p(vals, p))
    seen = set()
    if len(first) == rows:
        seen.add(first)
        yield first
    for _ in range(tries):
        combo = tuple(sorted(rng.sample(range(cols), rows)))
        if combo in seen:
            continue
        seen.add(combo)
        if len(echelon_mod_p(vals[:, list(combo)], p)) == rows:
            yield combo


# ---------------------------------------------------------------------------
# determinant of a complex


@dataclass(frozen=True)
class DetComplexPlan:
    """Square blocks ``(rows, cols)`` selected from each differential.

    ``blocks[p]`` comes from ``maps[p]``; its determinant enters the
    determinant of the complex with exponent ``(-1)^p``.
    """

    blocks: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]
    seed: int

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(r) for r, _ in self.blocks)


def _try_plan(maps: Sequence[LinearFormMatrix], rng: random.Random):
    x = random_point(rng, len(maps[0].x_roster))
    p = random_prime(rng)
    rows = tuple(range(len(maps[0].rows)))
    blocks = []
    for p_idx, M in enumerate(maps):
        if not rows:
            break
        sub = M.submatrix(rows, range(len(M.cols)))
        pivots = echelon_mod_p(to_mod_p(sub.evaluate(x), p), p) if sub.cols else []
        if len(pivots) < len(rows):
            return None
        cols = tuple(pivots)
        blocks.append((rows, cols))
        chosen = set(cols)
        rows = tuple(c for c in range(len(M.cols)) if c not in chosen)
    if rows:
        return None
    return tuple(blocks)


def plan_det_complex(strand: Union[KoszulStrand, LinearFormMatrix], seed: int = 0,
                     retries: int = 10) -> DetComplexPlan:
    """Greedy nested block selection at a seeded random point.

    Columns of each differential are chosen so that the block on the rows
    left over from the previous step is invertible; exactness of the strand
    at a generic point guarantees such a choice exists at every step.
    """
    maps = strand.maps if isinstance(strand, KoszulStrand) else [strand]
    rng = random.Random(seed)
    for _ in range(retries):
        blocks = _try_plan(maps, rng)
        if blocks is not None:
            return DetComplexPlan(blocks, seed)
    raise HypothesisFailure(
        "no invertible block selection found: the strand is not generically exact "
        "(acyclicity hypothesis not met) or M is not of generic full rank")


def det_complex_at_point(strand: Union[KoszulStrand, LinearFormMatrix],
                         plan: DetComplexPlan, x_point: Sequence) -> Fraction:
    maps = strand.maps if isinstance(strand, KoszulStrand) else [strand]
    value = Fraction(1)
    for p, (rows, cols) in enumerate(plan.blocks):
        block = maps[p].submatrix(rows, cols).evaluate(x_point)
        d = det_rational(block)
        if p % 2 == 0:
            value *= d
        else:
            if d == 0:
                raise SingularMatrix(f"block {p} is singular at this point")
            value /= d
    return value


# ---------------------------------------------------------------------------
# verification


@dataclass
class ImplicitReport:
    mode: str
    H: Optional[MultiPoly]
    k: int
    G: Optional[MultiPoly]
    passed: bool
    seed: int
    evidence: List[Tuple[Tuple[Fraction, ...], Fraction, Fraction, Optional[Fraction]]] = \
        field(default_factory=list)
    message: str = ""

    @property
    def ratio(self) -> Optional[Fraction]:
        return self.evidence[0][3] if self.evidence else None


def verify_factorization(obj: Union[KoszulStrand, LinearFormMatrix], H: MultiPoly, k: int,
                         G: Optional[MultiPoly] = None, seed: int = 0, trials: int = 5,
                         limit: int = DEFAULT_LIMIT, plan: Optional[DetComplexPlan] = None,
                         symbolic: Optional[bool] = None) -> ImplicitReport:
    """Check ``D = c * H^k * G`` for a nonzero constant ``c``.

    For a small square matrix (or when ``symbolic`` is forced) the check is an
    exact polynomial division.  Otherwise ``D`` is evaluated at ``trials``
    seeded random points and every ratio ``D / (H^k G)`` must agree.
    """
    if trials < 3:
        raise ValueError("at least 3 trials are required")
    if k < 1:
        raise ValueError("exponent k must be positive")
    roster = obj.x_roster
    H = H.change_roster(roster) if H.roster != roster else H
    G = MultiPoly.constant(1, roster) if G is None else (
        G.change_roster(roster) if G.roster != roster else G)
    target = H ** k * G
    if target.is_zero():
        raise DegenerateCandidates("H^k * G is the zero polynomial")

    M = obj.matrix if isinstance(obj, KoszulStrand) else obj
    square = isinstance(obj, LinearFormMatrix) and M.shape[0] == M.shape[1]
    if symbolic is None:
        symbolic = isinstance(obj, LinearFormMatrix) and M.shape[0] <= limit
    if symbolic:
        D = poly_det(M.to_polys()) if square else gcd_maximal_minors(M, limit, seed=seed)
        try:
            q = poly_divexact(D, target)
            ok = q.is_constant() and not q.is_zero()
        except InexactDivision:
            ok = False
        msg = "D / (H^k G) is a nonzero constant" if ok else "H^k G does not divide D up to a constant"
        return ImplicitReport("symbolic", H, k, G, ok, seed, [], msg)

    if isinstance(obj, LinearFormMatrix) and not square:
        raise OverLimit("non-square matrix beyond the symbolic limit: pass the full strand")
    plan = plan or plan_det_complex(obj, seed)
    rng = random.Random(seed + 1)
    evidence = []
    attempts = 0
    while len(evidence) < trials:
        attempts += 1
        if attempts > 10 * trials:
            raise DegenerateCandidates("H^k * G vanishes (or a block is singular) at every sampled point")
        x = random_point(rng, len(roster))
        hv = Fraction(target.eval(x))
        if hv == 0:
            continue
        try:
            dv = det_complex_at_point(obj, plan, x)
        except SingularMatrix:
            continue
        evidence.append((tuple(x), dv, hv, dv / hv))
    ratios = {e[3] for e in evidence}
    ok = len(ratios) == 1 and 0 not in ratios
    if ok:
        msg = f"ratio D/(H^{k} G) constant over {trials} points"
    elif 0 in ratios:
        msg = "D vanishes at a sampled point where H^k G does not"
    else:
        msg = f"{len(ratios)} distinct ratios over {trials} points"
    return ImplicitReport("evaluated", H, k, G, ok, seed, evidence, msg)


def degree_of_map(obj, H: MultiPoly, G: Optional[MultiPoly] = None, seed: int = 0,
                  trials: int = 5, max_k: int = MAX_EXPONENT) -> int:
    """Smallest ``k <= max_k`` for which ``D = c * H^k * G`` verifies."""
    plan = None if isinstance(obj, LinearFormMatrix) else plan_det_complex(obj, seed)
    for k in range(1, max_k + 1):
        if verify_factorization(obj, H, k, G, seed, trials, plan=plan).passed:
            return k
    raise HypothesisFailure(f"no exponent k <= {max_k} makes D / (H^k G) constant")


# ---------------------------------------------------------------------------
# membership


def membership(M: LinearFormMatrix, x_point: Sequence, seed: int = 0,
               check_generic: bool = True) -> bool:
    """True iff ``M`` evaluated at ``x_point`` has rank below its row count.

    A full-rank verdict is exact (a nonzero minor modulo a prime is a nonzero
    minor over Q).  A deficient verdict holds modulo three random primes.
    """
    if len(x_point) != len(M.x_roster):
        raise ValueError(f"point needs {len(M.x_roster)} coordinates")
    if check_generic and generic_rank(M, seed) < len(M.rows):
        raise HypothesisFailure("M is not generically of full row rank")
    values = M.evaluate([Fraction(v) for v in x_point])
    return numeric_rank(values, random.Random(seed)) < len(M.rows)


# ---------------------------------------------------------------------------
# degree probing


def _line_values(obj, plan, a, b, t):
    return det_complex_at_point(obj, plan, [ai + t * bi for ai, bi in zip(a, b)])


def probe_degree(obj: Union[KoszulStrand, LinearFormMatrix], seed: int = 0,
                 group: Optional[Sequence[int]] = None, max_degree: int = 400,
                 plan: Optional[DetComplexPlan] = None) -> int:
    """Degree of the determinant of the complex, read along a random line.

    With ``group`` given (indices into ``x_roster``) only those coordinates
    move, which yields the partial degree in that group of variables.  The
    univariate restriction is reconstructed by Newton divided differences
    until two consecutive orders vanish.
    """
    roster = obj.x_roster
    plan = plan or plan_det_complex(obj, seed)
    rng = random.Random(seed + 7)
    a = random_point(rng, len(roster))
    b = random_point(rng, len(roster))
    if group is not None:
        moving = set(group)
        b = [bi if i in moving else Fraction(0) for i, bi in enumerate(b)]
    ts: List[Fraction] = []
    table: List[Fraction] = []   # last diagonal of the divided-difference table
    coeffs: List[Fraction] = []
    zeros = 0
    t = 0
    while len(ts) <= max_degree + 2:
        t += 1
        tv = Fraction(t)
        try:
            y = _line_values(obj, plan, a, b, tv)
        except SingularMatrix:
            continue
        ts.append(tv)
        new = [y]
        for j in range(len(table)):
            new.append((new[j] - table[j]) / (tv - ts[-2 - j]))
        table = new
        coeffs.append(new[-1])
        if len(coeffs) > 1 and coeffs[-1] == 0:
            zeros += 1
            if zeros == 2:
                return len(coeffs) - 3
        else:
            zeros = 0
    raise HypothesisFailure("degree probe did not terminate")
