"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed at the end of the run.
"""

import itertools
import random
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from conftest import FIXTURES, random_curve, random_parameter, record
from toric_implicit.exactpoly import MultiPoly, same_up_to_scalar
from toric_implicit.implicit import (gcd_maximal_minors, membership, plan_det_complex,
                                     probe_degree, verify_factorization)
from toric_implicit.lattice import (LatticePolytope, compare_embeddings, contract, ehrhart,
                                    gamma, is_normal)
from toric_implicit.oracle import curve_implicit, normality_sumset
from toric_implicit.parsing import load_spec, parse_polynomial
from toric_implicit.strands import (MapSpec, build_koszul_strand, build_matrix,
                                    build_matrix_projective, generic_rank, nu0,
                                    nu0_multiprojective, nu0_projective, random_point,
                                    strand_is_complex, verify_syzygies)

EX3_H = (FIXTURES / "example3_H.txt").read_text().strip()
EX3_G_STATED = "Y1^2*X2*Y2*Y3^2*X4*Y4"
FIXTURE_FILES = ["example1.json", "example2.json", "example3.json", "cuspidal.json"]


def spec(name, target=None):
    return load_spec(str(FIXTURES / name), target)


class Checks:
    """Collects named sub-checks so a criterion reports everything before failing."""

    def __init__(self):
        self.items = []

    def __call__(self, name, ok):
        self.items.append((name, bool(ok)))

    @property
    def passed(self):
        return all(ok for _, ok in self.items)

    def failures(self):
        return [name for name, ok in self.items if not ok]


def finish(criterion, checks, elapsed, budget):
    checks(f"runtime {elapsed:.2f}s < {budget}s", elapsed < budget)
    detail = f"({elapsed:.2f}s)" if checks.passed else "failed: " + "; ".join(checks.failures())
    record(criterion, checks.passed, detail)
    assert checks.passed, checks.failures()


def test_criterion_1_example2_lattice():
    t = time.perf_counter()
    c = Checks()
    N = LatticePolytope([(0, 0), (2, 0), (1, 1), (0, 1)])
    c("E(1)=5", ehrhart(N, 1) == 5)
    c("E(2)=12", ehrhart(N, 2) == 12)
    c("E(5)=51", ehrhart(N, 5) == 51)
    c("gamma=1", gamma(N) == 1)
    proj = spec("example2.json", "projective")
    c("projective ring is the trapezoid", proj.ring.polytope == N and proj.degree == 3)
    c("nu0 projective = 5", nu0_projective(proj.ring, 3, proj.degree) == 5)
    multi = spec("example2.json", "multiprojective")
    c("nu0 multiprojective = 2", nu0_multiprojective(multi.ring, multi.degrees) == 2)
    finish(1, c, time.perf_counter() - t, 1)


def test_criterion_2_example1_strand():
    t = time.perf_counter()
    c = Checks()
    sp = spec("example1.json")
    N = sp.ring.polytope
    c("6 lattice points", ehrhart(N, 1) == 6)
    c("E(2)=17", ehrhart(N, 2) == 17)
    c("E(3)=34", ehrhart(N, 3) == 34)
    c("nu0=3", nu0(sp) == 3)
    st = build_koszul_strand(sp, 3)
    c("M3 is 34x51", st.matrix.shape == (34, 51))
    c("plan blocks (34,17,1)", plan_det_complex(st, 0).sizes == (34, 17, 1))
    c("generic rank 34", generic_rank(st.matrix, 0) == 34)
    finish(2, c, time.perf_counter() - t, 30)


def test_criterion_3_example3_verification():
    t = time.perf_counter()
    c = Checks()
    sp = spec("example3.json")
    st = build_koszul_strand(sp, nu0(sp))
    plan = plan_det_complex(st, 0)
    H = parse_polynomial(EX3_H, sp.x_roster)
    G_stated = parse_polynomial(EX3_G_STATED, sp.x_roster)
    rep = verify_factorization(st, H, 2, G_stated, seed=0, trials=5, plan=plan)
    c("PASS with stated G, k=2, 5 points", rep.passed and len(rep.evidence) == 5)
    c("k=1 fails", not verify_factorization(st, H, 1, G_stated, seed=0, trials=5, plan=plan).passed)
    c("degree 24 along a random line", probe_degree(st, seed=0, plan=plan) == 24)
    finish(3, c, time.perf_counter() - t, 120)


def test_example3_with_recomputed_extraneous_factor():
    # companion to criterion 3: the extraneous factor implied by the strand
    sp = spec("example3.json")
    st = build_koszul_strand(sp, 3)
    plan = plan_det_complex(st, 0)
    H = parse_polynomial(EX3_H, sp.x_roster)
    G = parse_polynomial((FIXTURES / "example3_G.txt").read_text(), sp.x_roster)
    rep = verify_factorization(st, H, 2, G, seed=0, trials=5, plan=plan)
    assert rep.passed and rep.ratio == -1
    assert not verify_factorization(st, H, 1, G, seed=0, trials=5, plan=plan).passed


def test_criterion_4_curve_oracle():
    t = time.perf_counter()
    c = Checks()
    rng = random.Random(2024)
    for i in range(20):
        target = ("projective", "multiprojective")[i % 2]
        coords, cs = random_curve(rng, target, 5)
        sp = MapSpec(("s",), target, coords)
        H = gcd_maximal_minors(build_matrix(sp, nu0(sp)))
        F = curve_implicit(cs)
        if target == "projective":
            roster = ("X0", "X1", "X2")
            H = H.specialize({0: 1})
            F = F.change_roster(roster)
        c(f"curve {i} ({target})", same_up_to_scalar(H, F))
    cusp = spec("cuspidal.json")
    M = build_matrix(cusp, nu0(cusp))
    c("cuspidal cubic", same_up_to_scalar(gcd_maximal_minors(M),
                                          parse_polynomial("X0*X2^2 - X1^3", M.x_roster)))
    finish(4, c, time.perf_counter() - t, 60)


def _image_points(sp, rng, count):
    out = []
    while len(out) < count:
        x = sp.image_point(random_parameter(rng, len(sp.params)))
        if sp.target == "multiprojective":
            if any(x[2 * i] == 0 and x[2 * i + 1] == 0 for i in range(sp.n)):
                continue
        elif not any(x):
            continue
        out.append(x)
    return out


def test_criterion_5_membership():
    t = time.perf_counter()
    c = Checks()
    rng = random.Random(5)
    cases = [("example 1", spec("example1.json")), ("example 3", spec("example3.json"))]
    for i in range(10):
        target = ("projective", "multiprojective")[i % 2]
        coords, _ = random_curve(rng, target, 4)
        cases.append((f"curve {i}", MapSpec(("s",), target, coords)))
    false_neg = false_pos = 0
    for name, sp in cases:
        M = build_matrix(sp, nu0(sp))
        c(f"{name} generically full rank", generic_rank(M, 0) == len(M.rows))
        for x in _image_points(sp, rng, 50):
            false_neg += not membership(M, x, check_generic=False)
        for _ in range(50):
            false_pos += membership(M, random_point(rng, len(M.x_roster)), check_generic=False)
    c(f"no false negatives ({false_neg})", false_neg == 0)
    c(f"no false positives ({false_pos})", false_pos == 0)
    finish(5, c, time.perf_counter() - t, 60)


# -- criterion 6 helpers: counts straight from the definitions, via scipy hulls


def _count(vertices, k, interior=False):
    V = np.array(vertices, dtype=float) * k
    lo, hi = np.floor(V.min(axis=0)).astype(int), np.ceil(V.max(axis=0)).astype(int)
    grid = np.array(list(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))), dtype=float)
    if V.shape[1] == 1:
        a, b = V.min(), V.max()
        mask = (grid[:, 0] > a) & (grid[:, 0] < b) if interior else (grid[:, 0] >= a) & (grid[:, 0] <= b)
        return int(mask.sum())
    eqs = ConvexHull(V).equations
    vals = grid @ eqs[:, :-1].T + eqs[:, -1]
    mask = np.all(vals < -1e-9, axis=1) if interior else np.all(vals <= 1e-9, axis=1)
    return int(mask.sum())


def _gamma_by_definition(vertices, dim):
    k = 0
    while _count(vertices, k + 1, interior=True) == 0:
        k += 1
    return k


def _random_normal_polytope(rng, dim):
    while True:
        npts = rng.randint(dim + 1, dim + 3)
        pts = [tuple(rng.randint(0, 3 if dim < 3 else 2) for _ in range(dim)) for _ in range(npts)]
        P = LatticePolytope(pts)
        if not P.is_full_dimensional or contract(P).factor != 1:
            continue
        if dim > 1 and not (is_normal(P) and normality_sumset(P.vertices, 2)):
            continue
        return P


def test_criterion_6_gamma_relations():
    t = time.perf_counter()
    c = Checks()
    rng = random.Random(6)
    for i in range(50):
        dim = (1, 2, 3)[i % 3]
        base = _random_normal_polytope(rng, dim)
        d = rng.randint(2, 4)
        shift = tuple(rng.randint(-3, 3) for _ in range(dim))
        N = base.scaled(d).translated(shift)
        con = contract(N)
        g, gp = gamma(N), gamma(con.base)
        c(f"#{i} contraction factor", con.factor == d)
        c(f"#{i} gamma >= gamma'", g >= gp)
        c(f"#{i} d(gamma'+1) >= gamma+1", d * (gp + 1) >= g + 1)
        c(f"#{i} gammas by definition", (g, gp) == (_gamma_by_definition(N.vertices, dim),
                                                     _gamma_by_definition(con.base.vertices, dim)))
        r = compare_embeddings(N)
        direct = _count(N.vertices, dim - g) > _count(con.base.vertices, d * dim - gp)
        c(f"#{i} verdict matches direct counts", r.prefer_contracted == direct)
        c(f"#{i} closed form matches", r.closed_form == direct)
    r = compare_embeddings(LatticePolytope([(3, 0), (0, 3), (0, 0)]))
    c("triangle 3: (d,gamma,gamma')=(3,0,2)", (r.d, r.gamma, r.gamma_contracted) == (3, 0, 2))
    r = compare_embeddings(LatticePolytope([(4, 0), (0, 4), (0, 0)]))
    c("triangle 4: (4,0,2), delta=1", (r.d, r.gamma, r.gamma_contracted, r.delta) == (4, 0, 2, 1))
    finish(6, c, time.perf_counter() - t, 30)


def test_criterion_7_structural_invariants():
    t = time.perf_counter()
    c = Checks()
    for name in FIXTURE_FILES:
        proj = spec(name, "projective")
        M = build_matrix_projective(proj, nu0(proj))
        c(f"{name}: syzygies verify", verify_syzygies(proj, M.syzygies))
        multi = spec(name, "multiprojective")
        st = build_koszul_strand(multi, nu0(multi))
        c(f"{name}: strand composes to zero", strand_is_complex(st))
        for sp in (proj, multi):
            N, con = sp.polytope, sp.contraction
            c(f"{name} {sp.target}: Ehrhart contraction identity",
              all(ehrhart(con.base, con.factor * mu) == ehrhart(N, mu) for mu in range(7)))
    finish(7, c, time.perf_counter() - t, 30)


def test_gamma_of_dilation_is_floor_of_contracted_gamma():
    # companion to criterion 6: the relation that does hold for N = d N' + shift
    rng = random.Random(66)
    for i in range(30):
        dim = (1, 2, 3)[i % 3]
        base = _random_normal_polytope(rng, dim)
        d = rng.randint(2, 4)
        N = base.scaled(d).translated(tuple(rng.randint(-3, 3) for _ in range(dim)))
        g, gp = gamma(N), gamma(contract(N).base)
        assert g == gp // d
        assert d * g <= gp
        assert d * (gp + 1) >= g + 1
