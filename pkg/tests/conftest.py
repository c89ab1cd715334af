from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from friezes.polygon import Triangulation, make_arc

ACCEPTANCE_LINES: list[str] = []


def random_triangulation(n: int, rng: random.Random) -> Triangulation:
    """Split the polygon on side (lo, hi) at a random apex, recursively."""
    diagonals = set()
    stack = [(1, n)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        apex = rng.randint(lo + 1, hi - 1)
        for a, b in ((lo, apex), (apex, hi)):
            if b - a >= 2:
                diagonals.add(make_arc(a, b, n))
                stack.append((a, b))
        if (lo, hi) != (1, n):
            diagonals.add((lo, hi))
    return Triangulation(n, frozenset(diagonals))


@st.composite
def triangulations(draw, n_min: int = 4, n_max: int = 12):
    n = draw(st.integers(n_min, n_max))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_triangulation(n, random.Random(seed))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def square():
    return Triangulation(4, frozenset({(1, 3)}))
