import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hnbounds.rootsystem import build_root_system

SMALL_SYSTEMS = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


def system_id(t):
    return f"{t[0]}{t[1]}"


@pytest.fixture(params=SMALL_SYSTEMS, ids=system_id)
def small_rs(request):
    return build_root_system(*request.param)


def random_rational(rng: random.Random, bound: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_degree_values(rng: random.Random, rank: int) -> list:
    return [random_rational(rng) for _ in range(rank)]


rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))


ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, budget in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({elapsed:.2f}s, budget {budget}s)")
