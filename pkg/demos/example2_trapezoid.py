"""The trapezoid example: both compactifications side by side.

The projective route needs the common denominator, whose Newton polytope
is three times the trapezoid; the multiprojective route works with the
trapezoid directly and gets a much smaller matrix.
"""

from pathlib import Path

from toric_implicit.implicit import plan_det_complex
from toric_implicit.lattice import compare_embeddings, ehrhart, gamma
from toric_implicit.parsing import load_spec
from toric_implicit.strands import build_koszul_strand, build_matrix_projective, nu0

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "example2.json"

proj = load_spec(str(FIXTURE), "projective")
multi = load_spec(str(FIXTURE), "multiprojective")
N = multi.polytope
print("trapezoid", N, "E(1), E(2), E(5) =", ehrhart(N, 1), ehrhart(N, 2), ehrhart(N, 5))
print("gamma =", gamma(N))

print("\nprojective: Newton polytope of the h_i is", proj.polytope)
print("contracted by d =", proj.degree, "to", proj.ring.polytope)
nu = nu0(proj)
M = build_matrix_projective(proj, nu)
print(f"nu0 = {nu}, syzygy matrix {M.shape[0]}x{M.shape[1]}")

nu = nu0(multi)
strand = build_koszul_strand(multi, nu)
print(f"\nmultiprojective: nu0 = {nu}, strand dimensions {list(strand.terms)}")
print("determinant blocks", plan_det_complex(strand, seed=0).sizes)

r = compare_embeddings(proj.polytope)
print("\nembedding comparison for 3N:", f"d={r.d} gamma={r.gamma} gamma'={r.gamma_contracted}",
      "-> contracted is smaller" if r.prefer_contracted else "-> original is smaller")
