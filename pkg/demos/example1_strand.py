"""Three rational functions of (s, t) mapped into (P^1)^3.

Builds the degree-3 Koszul strand, plans the determinant of the complex
and probes the partial degrees of the implicit equation.
"""

from pathlib import Path

from toric_implicit.implicit import plan_det_complex, probe_degree
from toric_implicit.lattice import ehrhart, gamma
from toric_implicit.parsing import load_spec
from toric_implicit.strands import build_koszul_strand, generic_rank, nu0

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "example1.json"

spec = load_spec(str(FIXTURE))
N = spec.polytope
print("Newton polytope", N)
print("lattice points in kN, k=0..4:", [ehrhart(N, k) for k in range(5)])
print("gamma =", gamma(N))

nu = nu0(spec)
strand = build_koszul_strand(spec, nu)
print(f"strand at nu={nu}: term dimensions {list(strand.terms)}")
print("M_nu is", "x".join(map(str, strand.matrix.shape)),
      "with generic rank", generic_rank(strand.matrix, seed=0))

plan = plan_det_complex(strand, seed=0)
print("determinant of the complex uses blocks", plan.sizes)
for i in range(spec.n):
    deg = probe_degree(strand, seed=0, group=(2 * i, 2 * i + 1), plan=plan)
    print(f"degree of the implicit equation in (X{i+1}, Y{i+1}):", deg)
