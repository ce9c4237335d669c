import random
from pathlib import Path

import pytest

from toric_implicit.exactpoly import MultiPoly
from toric_implicit.oracle import CurveSpec

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def random_univariate(rng: random.Random, deg: int, var: str = "s") -> MultiPoly:
    """Dense polynomial of exact degree ``deg`` with a nonzero constant term."""
    while True:
        terms = {(k,): rng.randint(-9, 9) for k in range(deg + 1)}
        if terms[(deg,)] and terms[(0,)]:
            return MultiPoly(terms, (var,))


def random_curve(rng: random.Random, target: str, max_degree: int = 5):
    """Map coordinates for MapSpec plus the matching oracle CurveSpec."""
    if target == "projective":
        d = rng.randint(1, max_degree)
        r = random_univariate(rng, d)
        p = random_univariate(rng, rng.randint(1, d))
        q = random_univariate(rng, rng.randint(1, d))
        return [(p, r), (q, r)], CurveSpec("projective", (p, q, r))
    pairs = []
    for _ in range(2):
        d = rng.randint(1, max_degree)
        pair = (random_univariate(rng, d), random_univariate(rng, rng.randint(0, d)))
        pairs.append(pair[::-1] if rng.random() < 0.5 else pair)
    return pairs, CurveSpec("multiprojective", tuple(pairs))


def random_parameter(rng: random.Random, n: int, bound: int = 30):
    from fractions import Fraction
    return [Fraction(rng.choice([x for x in range(-bound, bound + 1) if x]), rng.randint(1, bound))
            for _ in range(n)]


ACCEPTANCE = {}


def record(criterion: int, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (passed, detail)
    print(f"CRITERION {criterion}: {'PASS' if passed else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"CRITERION {k}: {'PASS' if passed else 'FAIL'}  {detail}")
