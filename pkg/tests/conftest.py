import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from wgfactor.corpus import cycle_graph, path_graph, random_connected, random_minimal

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def connected_graphs(draw, max_n=8, weights=(1, 2, 3)):
    rng = draw(st.randoms(use_true_random=False))
    n = draw(st.integers(1, max_n))
    p = draw(st.floats(0.0, 0.8))
    return random_connected(rng, n, p, weights)


@st.composite
def minimal_graphs(draw, max_n=8, weights=(1, 2, 3, 4, 5)):
    rng = draw(st.randoms(use_true_random=False))
    n = draw(st.integers(1, max_n))
    p = draw(st.floats(0.0, 0.8))
    return random_minimal(rng, n, p, weights)


def bellman_ford(g):
    """Distances by repeated relaxation; None for unreachable pairs."""
    inf = float("inf")
    out = []
    for s in range(g.n):
        dist = [inf] * g.n
        dist[s] = 0
        for _ in range(g.n):
            for u, v, w in g.edges:
                if dist[u] + w < dist[v]:
                    dist[v] = dist[u] + w
                if dist[v] + w < dist[u]:
                    dist[u] = dist[v] + w
        out.append([None if x == inf else x for x in dist])
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def p3():
    return path_graph([1, 1])


@pytest.fixture
def c4():
    return cycle_graph([1, 1, 1, 1])


# One line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
