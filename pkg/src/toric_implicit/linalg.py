"""Exact linear algebra over Z, Q, Q[X] and modular helpers over GF(p)."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

import numpy as np

from .exactpoly import MultiPoly, poly_divexact


class SingularMatrix(ArithmeticError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def integer_rows(rows: Sequence[Sequence]) -> Tuple[List[List[int]], Fraction]:
    """Scale each row to integers; returns the rows and the product of scalings."""
    out = []
    scale = Fraction(1)
    for row in rows:
        den = reduce(_lcm, (Fraction(x).denominator for x in row), 1)
        out.append([int(x * den) for x in row] if den != 1 else [int(x) for x in row])
        scale *= den
    return out, scale


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            if f == 0:
                for j in range(k + 1, n):
                    ri[j] = ri[j] * pk // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * pk - f * rk[j]) // prev
        prev = pk
    return sign * a[n - 1][n - 1]


def det_rational(m: Sequence[Sequence]) -> Fraction:
    ints, scale = integer_rows(m)
    return Fraction(bareiss_det(ints)) / scale


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> List[List[Fraction]]:
    """Kernel basis read off the reduced row echelon form.

    The reduced echelon form is unique, so the basis (one vector per free
    column, in column order) is deterministic.
    """
    rows, _ = integer_rows(m)
    ncols = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        best = None
        for i in range(r, len(rows)):
            v = rows[i][c]
            if v and (best is None or abs(v) < best):
                piv, best = i, abs(v)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        pv = pr[c]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                row = [x * pv - f * y for x, y in zip(rows[i], pr)]
                g = reduce(math.gcd, row, 0)
                rows[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    basis = []
    pivset = set(pivots)
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = Fraction(-rows[i][free], rows[i][c])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# modular helpers


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = 1 << 30, hi: int = (1 << 31) - 1) -> int:
    while True:
        n = rng.randrange(lo, hi) | 1
        if _is_probable_prime(n):
            return n


def to_mod_p(m: Sequence[Sequence], p: int) -> np.ndarray:
    """Reduce a rational matrix modulo ``p``; raises if a denominator vanishes."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = np.zeros((rows, cols), dtype=np.int64)
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x:
                x = Fraction(x)
                den = x.denominator % p
                if den == 0:
                    raise ZeroDivisionError("denominator vanishes modulo p")
                out[i, j] = x.numerator % p * pow(den, -1, p) % p
    return out


def echelon_mod_p(a: np.ndarray, p: int) -> List[int]:
    """Pivot columns (first-found, column order) of ``a`` over GF(p)."""
    a = a.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    return len(echelon_mod_p(a, p))


# ---------------------------------------------------------------------------
# polynomial matrices


def poly_det(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant over Q[X] by fraction-free Bareiss elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    roster = a[0][0].roster
    zero = MultiPoly.zero(roster)
    sign = 1
    prev = MultiPoly.constant(1, roster)
    for k in range(n - 1):
        if a[k][k].is_zero():
            cand = [i for i in range(k + 1, n) if not a[i][k].is_zero()]
            if not cand:
                return zero
            i = min(cand, key=lambda i: len(a[i][k].terms))
            a[k], a[i] = a[i], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * pk - f * a[k][j] if not f.is_zero() else a[i][j] * pk
                a[i][j] = poly_divexact(num, prev) if not num.is_zero() else zero
        prev = pk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d
