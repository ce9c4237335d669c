"""Random rational plane curves against a Sylvester resultant.

For each curve the gcd of the maximal minors of M_nu0 is compared with
the resultant computed by the oracle.  Finishes with the cuspidal cubic.
"""

import random

from toric_implicit.exactpoly import MultiPoly, same_up_to_scalar
from toric_implicit.implicit import gcd_maximal_minors
from toric_implicit.oracle import CurveSpec, curve_implicit
from toric_implicit.parsing import parse_polynomial
from toric_implicit.strands import MapSpec, build_matrix, nu0

S = ("s",)
rng = random.Random(7)


def rand_poly(deg):
    return MultiPoly({(i,): rng.randint(-5, 5) for i in range(deg + 1)}, S)


for i in range(6):
    f1, g1, f2, g2 = (rand_poly(rng.randint(1, 3)) for _ in range(4))
    if min(p.is_zero() for p in (f1, g1, f2, g2)):
        continue
    coords = [(f1, g1), (f2, g2)]
    try:
        spec = MapSpec(S, "multiprojective", coords)
        M = build_matrix(spec, nu0(spec))
        H = gcd_maximal_minors(M)
        F = curve_implicit(CurveSpec("multiprojective", tuple(coords)))
    except ValueError as exc:
        print(f"curve {i}: skipped ({exc})")
        continue
    print(f"curve {i}: {M.shape[0]}x{M.shape[1]} matrix, degree {H.total_degree()},",
          "agrees" if same_up_to_scalar(H, F) else "DISAGREES")

cusp = MapSpec(S, "projective", [(parse_polynomial("s^2", S), parse_polynomial("1", S)),
                                 (parse_polynomial("s^3", S), parse_polynomial("1", S))])
M = build_matrix(cusp, nu0(cusp))
print("\ncuspidal cubic:", gcd_maximal_minors(M))
