"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` maps exponent tuples to coefficients.  Coefficients are
Python ``int`` whenever they are integral and :class:`fractions.Fraction`
otherwise, which keeps the common integer case fast.  Terms are ordered
graded-lexicographically with variables compared in roster order.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Coeff = Union[int, Fraction]


class RosterMismatch(ValueError):
    pass


class InexactDivision(ArithmeticError):
    """Raised by :func:`poly_divexact` when the divisor does not divide."""


def _norm(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    """Immutable polynomial over Q in a fixed, named variable roster."""

    __slots__ = ("roster", "terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Coeff], roster: Sequence[str]):
        roster = tuple(roster)
        clean: Dict[Exponent, Coeff] = {}
        nv = len(roster)
        for e, c in terms.items():
            if c:
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match roster {roster}")
                clean[tuple(e)] = _norm(c)
        self.roster = roster
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, terms: Dict[Exponent, Coeff], roster: Tuple[str, ...]) -> "MultiPoly":
        p = object.__new__(cls)
        p.roster = roster
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, roster: Sequence[str]) -> "MultiPoly":
        return cls._raw({}, tuple(roster))

    @classmethod
    def constant(cls, c, roster: Sequence[str]) -> "MultiPoly":
        roster = tuple(roster)
        return cls({(0,) * len(roster): c}, roster)

    @classmethod
    def var(cls, name: str, roster: Sequence[str]) -> "MultiPoly":
        roster = tuple(roster)
        e = [0] * len(roster)
        e[roster.index(name)] = 1
        return cls._raw({tuple(e): 1}, roster)

    @classmethod
    def monomial(cls, exps: Exponent, roster: Sequence[str], coeff: Coeff = 1) -> "MultiPoly":
        return cls({tuple(exps): coeff}, roster)

    # basic queries
    @property
    def nvars(self) -> int:
        return len(self.roster)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Coeff:
        return self.terms.get((0,) * self.nvars, 0)

    def support(self):
        return list(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: Union[int, str]) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def leading_exponent(self) -> Exponent:
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> Coeff:
        return self.terms[self.leading_exponent()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def _index(self, var: Union[int, str]) -> int:
        return var if isinstance(var, int) else self.roster.index(var)

    def _check(self, other: "MultiPoly"):
        if self.roster != other.roster:
            raise RosterMismatch(f"{self.roster} != {other.roster}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.roster)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, self.roster)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.roster)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.roster)
            return MultiPoly._raw({e: _norm(c * other) for e, c in self.terms.items()}, self.roster)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Exponent, Coeff] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw({e: _norm(c) for e, c in out.items() if c}, self.roster)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.roster)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return poly_divexact(self, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.roster)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.roster == other.roster and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.roster, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self!s}, roster={self.roster})"

    def __str__(self):
        return format_poly(self)

    # evaluation / substitution
    def eval(self, point: Sequence) -> Coeff:
        return poly_eval(self, point)

    def specialize(self, values: Mapping[int, Coeff]) -> "MultiPoly":
        """Substitute numeric values for some variables, keeping the roster."""
        out: Dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in values.items():
                if e[i]:
                    c = c * v ** e[i]
                e2[i] = 0
            if c:
                k = tuple(e2)
                out[k] = out.get(k, 0) + c
        return MultiPoly(out, self.roster)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with polynomial images of every roster variable."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].roster if images else self.roster
        total = MultiPoly.zero(target)
        cache: Dict[Tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[i, k] = images[i] ** k
                    term = term * cache[i, k]
            total = total + term
        return total

    def change_roster(self, roster: Sequence[str]) -> "MultiPoly":
        """Re-express in a roster containing every variable that occurs."""
        roster = tuple(roster)
        pos = []
        for i, name in enumerate(self.roster):
            pos.append(roster.index(name) if name in roster else None)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(roster)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise RosterMismatch(f"variable {self.roster[i]} missing from {roster}")
                    e2[pos[i]] = k
            out[tuple(e2)] = c
        return MultiPoly._raw(out, roster)

    # content helpers
    def integer_content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive over Z."""
        if not self.terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self.terms.values()]
        dens = [Fraction(c).denominator for c in self.terms.values()]
        return Fraction(reduce(math.gcd, nums), reduce(_lcm, dens))

    def primitive(self) -> "MultiPoly":
        """Integral, content one, positive leading coefficient."""
        if not self.terms:
            return self
        c = self.integer_content()
        if self.leading_coefficient() < 0:
            c = -c
        return MultiPoly._raw({e: _norm(v / c) for e, v in self.terms.items()}, self.roster)

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self * (1 / Fraction(self.leading_coefficient()))


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def format_coeff(c: Coeff) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: MultiPoly) -> str:
    """Canonical text: grlex-descending terms, e.g. ``2*X1^2*Y3 - 1/3*X2``."""
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            name if k == 1 else f"{name}^{k}" for name, k in zip(p.roster, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# module-level operations


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    a._check(b)
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    a._check(b)
    return a * b


def poly_eval(p: MultiPoly, point: Sequence) -> Coeff:
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, roster has {p.nvars}")
    total = 0
    powers: Dict[Tuple[int, int], Coeff] = {}
    for e, c in p.terms.items():
        t = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in powers:
                    powers[key] = point[i] ** k
                t = t * powers[key]
        total += t
    return _norm(total) if isinstance(total, Fraction) else total


def _divides(small: Exponent, big: Exponent) -> bool:
    return all(s <= b for s, b in zip(small, big))


def poly_divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact quotient ``a / b``; raises :class:`InexactDivision` otherwise."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if len(b.terms) == 1:
        (eb, cb), = b.terms.items()
        out = {}
        for e, c in a.terms.items():
            if not _divides(eb, e):
                raise InexactDivision("monomial divisor does not divide")
            out[tuple(x - y for x, y in zip(e, eb))] = _norm(Fraction(c) / cb) if not (
                isinstance(c, int) and isinstance(cb, int) and c % cb == 0) else c // cb
        return MultiPoly._raw(out, a.roster)
    lb = b.leading_exponent()
    lcb = b.terms[lb]
    rest = [(e, c) for e, c in b.terms.items() if e != lb]
    r = dict(a.terms)
    q: Dict[Exponent, Coeff] = {}
    while r:
        lr = max(r, key=_grlex_key)
        if not _divides(lb, lr):
            raise InexactDivision(f"{format_poly(b)} does not divide")
        c = r.pop(lr)
        if isinstance(c, int) and isinstance(lcb, int) and c % lcb == 0:
            t = c // lcb
        else:
            t = _norm(Fraction(c) / lcb)
        shift = tuple(x - y for x, y in zip(lr, lb))
        q[shift] = t
        for e, cb in rest:
            k = tuple(x + y for x, y in zip(e, shift))
            v = r.get(k, 0) - t * cb
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return MultiPoly(q, a.roster)


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    try:
        poly_divexact(a, b)
    except InexactDivision:
        return False
    return True


# ---------------------------------------------------------------------------
# gcd


def _coeffs_in(p: MultiPoly, i: int) -> Dict[int, MultiPoly]:
    """Split ``p`` as a univariate polynomial in variable ``i``."""
    out: Dict[int, Dict[Exponent, Coeff]] = {}
    for e, c in p.terms.items():
        k = e[i]
        e2 = e[:i] + (0,) + e[i + 1:]
        out.setdefault(k, {})[e2] = c
    return {k: MultiPoly._raw(t, p.roster) for k, t in out.items()}


def _shift_var(p: MultiPoly, i: int, k: int) -> MultiPoly:
    if k == 0:
        return p
    return MultiPoly._raw(
        {e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in p.terms.items()}, p.roster
    )


def _content_in(p: MultiPoly, i: int) -> MultiPoly:
    coeffs = list(_coeffs_in(p, i).values())
    coeffs.sort(key=lambda q: len(q.terms))
    g = coeffs[0].primitive()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, c)
    return g


def _prem(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    """Sparse pseudo-remainder of ``a`` by ``b`` in variable ``i``."""
    db = b.degree(i)
    cb = _coeffs_in(b, i)
    lcb = cb[db]
    r = a
    while not r.is_zero():
        dr = r.degree(i)
        if dr < db:
            break
        lcr = _coeffs_in(r, i)[dr]
        r = r * lcb - _shift_var(b * lcr, i, dr - db)
        r = r.primitive()
    return r


def _random_image_degree(a: MultiPoly, b: MultiPoly, i: int, rng: random.Random):
    """Degree in var ``i`` of gcd of a random specialization of the other vars.

    Returns None when the specialization kills a leading coefficient.
    """
    others = [j for j in range(a.nvars) if j != i]
    vals = {j: rng.randint(-50, 50) for j in others}
    sa, sb = a.specialize(vals), b.specialize(vals)
    if sa.degree(i) != a.degree(i) or sb.degree(i) != b.degree(i):
        return None
    return _univariate_gcd(sa, sb, i).degree(i)


def _univariate_gcd(a: MultiPoly, b: MultiPoly, i: int) -> MultiPoly:
    while not b.is_zero():
        da, db = a.degree(i), b.degree(i)
        if da < db:
            a, b = b, a
            continue
        r = a
        cb = _coeffs_in(b, i)[db].constant_value()
        while not r.is_zero() and r.degree(i) >= db:
            dr = r.degree(i)
            cr = _coeffs_in(r, i)[dr].constant_value()
            r = r - _shift_var(b * (Fraction(cr) / cb), i, dr - db)
        a, b = b, r
    return a.primitive()


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Primitive gcd over Q with positive leading coefficient (gcd(0, 0) = 0)."""
    a._check(b)
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.is_constant() or b.is_constant():
        return MultiPoly.constant(1, a.roster)
    if a == b:
        return a
    if len(a.terms) == 1 or len(b.terms) == 1:
        return _gcd_with_monomial(a, b)
    used = [j for j in range(a.nvars) if a.degree(j) > 0 or b.degree(j) > 0]
    i = used[-1]
    if a.degree(i) <= 0:
        return poly_gcd(a, _content_in(b, i))
    if b.degree(i) <= 0:
        return poly_gcd(_content_in(a, i), b)
    ca, cb = _content_in(a, i), _content_in(b, i)
    pa, pb = poly_divexact(a, ca), poly_divexact(b, cb)
    g_content = poly_gcd(ca, cb)
    if len(used) == 1:
        return (g_content * _univariate_gcd(pa, pb, i)).primitive()
    # cheap coprimality certificate from a random specialization
    rng = random.Random(len(pa.terms) * 7919 + len(pb.terms))
    for _ in range(2):
        d = _random_image_degree(pa, pb, i, rng)
        if d == 0:
            return g_content
        if d is not None:
            break
    if pa.degree(i) < pb.degree(i):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, i)
        if r.is_zero():
            break
        if r.degree(i) == 0:
            return g_content
        pa, pb = pb, _primitive_in(r, i)
    return (g_content * _primitive_in(pb, i)).primitive()


def _primitive_in(p: MultiPoly, i: int) -> MultiPoly:
    c = _content_in(p, i)
    if c.is_constant():
        return p.primitive()
    return poly_divexact(p, c).primitive()


def _gcd_with_monomial(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if len(a.terms) != 1:
        a, b = b, a
    (ea, _), = a.terms.items()
    low = list(ea)
    for e in b.terms:
        low = [min(x, y) for x, y in zip(low, e)]
    return MultiPoly._raw({tuple(low): 1}, a.roster)


def poly_gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    g = None
    for p in polys:
        g = p.primitive() if g is None else poly_gcd(g, p)
    if g is None:
        raise ValueError("empty sequence")
    return g


def poly_lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return poly_divexact(a * b, poly_gcd(a, b)).primitive()


def same_up_to_scalar(a: MultiPoly, b: MultiPoly) -> bool:
    """True when ``a = c*b`` for a nonzero rational ``c``."""
    if a.roster != b.roster or len(a.terms) != len(b.terms):
        return False
    if a.is_zero():
        return b.is_zero()
    return a.monic() == b.monic()
