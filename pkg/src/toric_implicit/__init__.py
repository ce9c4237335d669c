"""Implicitization of rational hypersurface parametrizations via toric representation matrices."""

from .exactpoly import MultiPoly, format_poly, poly_divexact, poly_gcd, same_up_to_scalar
from .implicit import (DetComplexPlan, ImplicitReport, degree_of_map, det_complex_at_point,
                       gcd_maximal_minors, membership, plan_det_complex, probe_degree,
                       verify_factorization)
from .lattice import (LatticePolytope, compare_embeddings, contract, ehrhart, ehrhart_interior,
                      gamma, is_normal, lattice_points, newton_polytope)
from .parsing import load_spec, parse_polynomial
from .strands import (KoszulStrand, LinearFormMatrix, MapSpec, build_koszul_strand,
                      build_matrix, build_matrix_projective, generic_rank, nu0,
                      nu0_multiprojective, nu0_projective, syzygy_basis)
from .toricring import GradedElement, ToricRing, homogenize

__version__ = "0.1.0"
