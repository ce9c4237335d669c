"""Command line front end.

Every subcommand takes a JSON map-specification file.  Reports are printed
as ``key: value`` lines, or ``key<TAB>value`` with ``--format machine``.
Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors or unmet hypotheses.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import implicit, lattice, oracle, strands
from .exactpoly import MultiPoly
from .parsing import ParseError, SpecError, load_spec, parse_polynomial, parse_rational, read_spec_file

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class Report:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def __call__(self, key: str, value) -> None:
        sep = "\t" if self.fmt == "machine" else ": "
        self.out.write(f"{key}{sep}{value}\n")

    def line(self, text: str) -> None:
        self.out.write(text + "\n")


def parse_point(text: str) -> List[Fraction]:
    return [parse_rational(x) for x in text.split(",") if x.strip()]


def _fmt_point(p: Sequence) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def _nu(args, spec, sf) -> int:
    if args.nu is not None:
        return args.nu
    if sf.nu is not None:
        return int(sf.nu)
    return strands.nu0(spec)


def _seed(args, sf) -> int:
    return args.seed if args.seed is not None else sf.seed


def _limit(args, sf) -> int:
    return args.limit if args.limit is not None else sf.limit


def _read_poly_file(path: str, roster) -> MultiPoly:
    return parse_polynomial(Path(path).read_text().strip(), roster)


# ---------------------------------------------------------------------------
# subcommands


def cmd_polytope(args, rep: Report) -> int:
    spec = load_spec(args.spec, args.target)
    P = spec.newton
    rep("newton_vertices", P)
    rep("newton_lattice_points", lattice.ehrhart(P, 1))
    rep("lattice_index", spec.reduction.index)
    rep("polytope", spec.polytope)
    c = spec.contraction
    rep("contraction", c.base)
    rep("contraction_factor", c.factor)
    rep("contraction_shift", _fmt_point(c.shift))
    base = c.base
    rep("ehrhart", " ".join(str(lattice.ehrhart(base, k)) for k in range(args.upto + 1)))
    rep("ehrhart_interior", " ".join(str(lattice.ehrhart_interior(base, k))
                                     for k in range(args.upto + 1)))
    if base.is_full_dimensional:
        rep("gamma", lattice.gamma(base))
    rep("normal", str(lattice.is_normal(base)).lower())
    return EXIT_OK


def cmd_bounds(args, rep: Report) -> int:
    sf = read_spec_file(args.spec)
    for target in ("projective", "multiprojective"):
        spec = load_spec(args.spec, target)
        n0 = strands.nu0(spec)
        rep(f"nu0_{target}", n0)
        ring = spec.ring
        if target == "projective":
            rep("degree_projective", spec.degree)
            M = strands.build_matrix_projective(spec, n0) if args.shapes else None
            rows = ring.hilbert(n0)
            rep("rows_projective", rows)
            if M is not None:
                rep("cols_projective", M.shape[1])
        else:
            rep("degrees_multiprojective", " ".join(map(str, spec.degrees)))
            dims = strands.koszul_term_dims(spec, n0)
            rep("rows_multiprojective", dims[0])
            rep("cols_multiprojective", dims[1])
            rep("strand_multiprojective", " ".join(map(str, dims)))
    rep("seed", _seed(args, sf))
    return EXIT_OK


def cmd_matrix(args, rep: Report) -> int:
    sf = read_spec_file(args.spec)
    spec = load_spec(args.spec, args.target)
    nu = _nu(args, spec, sf)
    M = strands.build_matrix(spec, nu)
    rows, cols = M.shape
    rep.line(f"{rows} {cols} {' '.join(M.x_roster)}")
    for (r, c) in sorted(M.cells):
        rep.line(f"{r} {c} : {M.format_form(r, c)}")
    return EXIT_OK


def cmd_implicit(args, rep: Report) -> int:
    sf = read_spec_file(args.spec)
    spec = load_spec(args.spec, args.target)
    nu, seed, limit = _nu(args, spec, sf), _seed(args, sf), _limit(args, sf)
    M = strands.build_matrix(spec, nu)
    rep("nu", nu)
    rep("shape", f"{M.shape[0]}x{M.shape[1]}")
    rep("seed", seed)
    H = implicit.gcd_maximal_minors(M, limit, seed=seed)
    rep("mode", "symbolic")
    rep("implicit", H)
    rep("total_degree", H.total_degree())
    return EXIT_OK


def _verification_object(spec, nu):
    if spec.target == "multiprojective":
        return strands.build_koszul_strand(spec, nu)
    return strands.build_matrix_projective(spec, nu)


def cmd_verify(args, rep: Report) -> int:
    sf = read_spec_file(args.spec)
    spec = load_spec(args.spec, args.target)
    nu, seed, limit = _nu(args, spec, sf), _seed(args, sf), _limit(args, sf)
    roster = spec.x_roster
    H = _read_poly_file(args.H, roster)
    G = _read_poly_file(args.G, roster) if args.G else None
    obj = _verification_object(spec, nu)
    report = implicit.verify_factorization(obj, H, args.k, G, seed=seed, trials=args.trials,
                                           limit=limit)
    rep("nu", nu)
    rep("seed", seed)
    rep("mode", report.mode)
    rep("k", args.k)
    rep("H", H)
    rep("G", report.G)
    for i, (x, dv, hv, ratio) in enumerate(report.evidence):
        rep(f"point_{i}", _fmt_point(x))
        rep(f"ratio_{i}", ratio)
    rep("detail", report.message)
    rep("result", "PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_membership(args, rep: Report) -> int:
    sf = read_spec_file(args.spec)
    spec = load_spec(args.spec, args.target)
    nu, seed = _nu(args, spec, sf), _seed(args, sf)
    M = strands.build_matrix(spec, nu)
    point = parse_point(args.point)
    verdict = implicit.membership(M, point, seed=seed)
    rep("nu", nu)
    rep("seed", seed)
    rep("point", _fmt_point(point))
    rep("on_hypersurface", str(verdict).lower())
    return EXIT_OK


def cmd_oracle(args, rep: Report) -> int:
    sf = read_spec_file(args.spec)
    spec = load_spec(args.spec, args.target)
    if args.normal:
        rep("normal_sumset", str(oracle.normality_sumset(spec.newton.vertices, args.normal)).lower())
        return EXIT_OK
    if len(spec.params) != 1:
        rep("error", "the resultant oracle handles plane curves only")
        return EXIT_ERROR
    (f1, g1), (f2, g2) = spec.coordinates
    if spec.target == "projective":
        hs = spec.affine_h
        curve = oracle.CurveSpec("projective", (hs[1], hs[2], hs[0]), spec.params[0])
    else:
        curve = oracle.CurveSpec("multiprojective", ((f1, g1), (f2, g2)), spec.params[0])
    rep("target", spec.target)
    rep("implicit", oracle.curve_implicit(curve))
    rep("seed", _seed(args, sf))
    return EXIT_OK


COMMANDS = {
    "polytope": cmd_polytope,
    "bounds": cmd_bounds,
    "matrix": cmd_matrix,
    "implicit": cmd_implicit,
    "verify": cmd_verify,
    "membership": cmd_membership,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-implicit",
                                     description="Implicitization with toric representation matrices")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="JSON map specification")
    common.add_argument("--target", choices=["projective", "multiprojective"],
                        help="override the compactification named in the file")
    common.add_argument("--nu", type=int, help="strand degree (default: nu0)")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--limit", type=int, help="row limit for symbolic minors (default 12)")
    common.add_argument("--format", choices=["text", "machine"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("polytope", parents=[common], help="Newton polytope and lattice data")
    p.add_argument("--upto", type=int, default=5, help="largest dilation to count")
    p = sub.add_parser("bounds", parents=[common], help="degree bounds for both compactifications")
    p.add_argument("--shapes", action="store_true", help="also build the projective matrix")
    sub.add_parser("matrix", parents=[common], help="print M_nu")
    sub.add_parser("implicit", parents=[common], help="gcd of maximal minors")
    p = sub.add_parser("verify", parents=[common], help="check D = c H^k G")
    p.add_argument("--H", required=True, help="file holding H")
    p.add_argument("--G", help="file holding the extraneous factor")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--trials", type=int, default=5)
    p = sub.add_parser("membership", parents=[common], help="rank test at a point")
    p.add_argument("--point", required=True, help="comma separated rationals in x_roster order")
    p = sub.add_parser("oracle", parents=[common], help="reference computations")
    p.add_argument("--normal", type=int, metavar="M", help="sumset normality up to M")
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.format, out)
    try:
        return COMMANDS[args.command](args, rep)
    except (ParseError, SpecError, FileNotFoundError, ValueError, strands.HypothesisFailure,
            implicit.OverLimit, implicit.DegenerateCandidates) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
