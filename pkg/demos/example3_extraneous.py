"""Three parameters into (P^1)^4: the determinant carries an extraneous factor.

The map has degree 2, so D = c H^2 G.  We check the factorization at
random points, compare against k = 1, and read off the total degree of D.
"""

from pathlib import Path

from toric_implicit.implicit import plan_det_complex, probe_degree, verify_factorization
from toric_implicit.parsing import load_spec, parse_polynomial
from toric_implicit.strands import build_koszul_strand, nu0

ROOT = Path(__file__).resolve().parent.parent / "fixtures"

spec = load_spec(str(ROOT / "example3.json"))
print("Newton polytope", spec.newton, "lattice index", spec.reduction.index)
print("working polytope", spec.polytope)

strand = build_koszul_strand(spec, nu0(spec))
plan = plan_det_complex(strand, seed=0)
print("strand dimensions", list(strand.terms), "blocks", plan.sizes)
print("total degree of D:", probe_degree(strand, seed=0, plan=plan))

H = parse_polynomial((ROOT / "example3_H.txt").read_text(), spec.x_roster)
G = parse_polynomial((ROOT / "example3_G.txt").read_text(), spec.x_roster)
print("H has total degree", H.total_degree(), "and G is", G)
for k in (1, 2):
    rep = verify_factorization(strand, H, k, G, seed=0, trials=5, plan=plan)
    print(f"k={k}:", "PASS" if rep.passed else "FAIL", rep.message)
