import random
from fractions import Fraction

import sympy

from toric_implicit.linalg import (bareiss_det, det_rational, echelon_mod_p, nullspace, poly_det,
                                   random_prime, rank_mod_p, to_mod_p)
from toric_implicit.parsing import parse_polynomial


def test_bareiss_matches_sympy():
    rng = random.Random(1)
    for n in range(1, 7):
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(m) == sympy.Matrix(m).det()


def test_det_rational_and_zero():
    m = [[Fraction(1, 2), 3], [Fraction(2, 3), 4]]
    assert det_rational(m) == Fraction(1, 2) * 4 - 3 * Fraction(2, 3)
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([[0, 1], [1, 0]]) == -1


def test_nullspace_is_kernel_and_reduced():
    rng = random.Random(2)
    for _ in range(5):
        m = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(4)]
        ker = nullspace(m)
        assert len(ker) == 6 - sympy.Matrix(m).rank()
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        ref = sympy.Matrix(m).nullspace()
        assert len(ref) == len(ker)


def test_modular_rank():
    rng = random.Random(3)
    p = random_prime(rng)
    assert p > 2 ** 30
    m = [[1, 2, 3], [2, 4, 6], [Fraction(1, 3), 0, 1]]
    assert rank_mod_p(to_mod_p(m, p), p) == 2
    assert echelon_mod_p(to_mod_p([[0, 1], [0, 2]], p), p) == [1]


def test_poly_det():
    R = ("a", "b", "c", "d")
    m = [[parse_polynomial("a", R), parse_polynomial("b", R)],
         [parse_polynomial("c", R), parse_polynomial("d", R)]]
    assert poly_det(m) == parse_polynomial("a*d - b*c", R)
    zero_first = [[parse_polynomial("0", R), parse_polynomial("b", R)],
                  [parse_polynomial("c", R), parse_polynomial("d", R)]]
    assert poly_det(zero_first) == parse_polynomial("-b*c", R)
