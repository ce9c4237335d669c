"""Polynomial expression grammar and map-specification files.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Division is only allowed by nonzero constants, so ``1/3*x`` is a rational
coefficient.  ``^`` binds tighter than unary minus: ``-x^2 = -(x^2)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from .exactpoly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


class SpecError(ValueError):
    """Malformed map specification."""


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, roster: Sequence[str]):
        self.text = text
        self.roster = tuple(roster)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            q = self.unary()
            if op[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.fail("division only by nonzero constants", op)
                p = p * (1 / Fraction(q.constant_value()))
        return p

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return MultiPoly.constant(val, self.roster)
        if kind == "name":
            if val not in self.roster:
                self.fail(f"unknown variable {val!r}", tok)
            return MultiPoly.var(val, self.roster)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        self.fail("unexpected token", tok)


def parse_polynomial(text: str, roster: Sequence[str]) -> MultiPoly:
    """Parse ``text`` into an exact polynomial over ``roster``."""
    return _Parser(text, roster).parse()


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


@dataclass
class SpecFile:
    """Raw contents of a JSON map-specification file."""

    vars: List[str]
    target: str
    coordinates: List[dict]
    nu: Optional[int] = None
    seed: int = 0
    limit: int = 12
    extra: dict = field(default_factory=dict)


def read_spec_file(path) -> SpecFile:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: {exc}") from exc
    for key in ("vars", "target", "coordinates"):
        if key not in raw:
            raise SpecError(f"{path}: missing key {key!r}")
    if raw["target"] not in ("projective", "multiprojective"):
        raise SpecError(f"{path}: target must be projective or multiprojective")
    if not raw["vars"]:
        raise SpecError(f"{path}: need at least one parameter variable")
    known = {"vars", "target", "coordinates", "nu", "seed", "limit"}
    return SpecFile(
        vars=list(raw["vars"]),
        target=raw["target"],
        coordinates=list(raw["coordinates"]),
        nu=raw.get("nu"),
        seed=int(raw.get("seed", 0)),
        limit=int(raw.get("limit", 12)),
        extra={k: v for k, v in raw.items() if k not in known},
    )


def load_spec(path, target: Optional[str] = None):
    """Read a spec file and derive the full :class:`~toric_implicit.strands.MapSpec`.

    ``target`` overrides the compactification named in the file.
    """
    from .strands import MapSpec

    sf = read_spec_file(path)
    coords = []
    for entry in sf.coordinates:
        num = parse_polynomial(str(entry["num"]), sf.vars)
        den = parse_polynomial(str(entry.get("den", "1")), sf.vars)
        coords.append((num, den))
    return MapSpec(sf.vars, target or sf.target, coords)
