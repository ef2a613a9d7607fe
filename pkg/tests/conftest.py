import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from oddchrom.graph import AbstractGraph, EmbeddedGraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def abstract_graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return AbstractGraph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def embedded_graphs(draw, min_n=1, max_n=8):
    g = draw(abstract_graphs(min_n, max_n))
    rots = []
    for v in range(g.n):
        nbrs = list(g.neighbors(v))
        rots.append(draw(st.permutations(nbrs)) if nbrs else [])
    return EmbeddedGraph(rots)


def seeded_graph(rng: np.random.Generator, n: int, p: float) -> AbstractGraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return AbstractGraph.from_edges(n, pairs)


def random_rotation(g: AbstractGraph, rng: np.random.Generator) -> EmbeddedGraph:
    rots = []
    for v in range(g.n):
        nbrs = list(g.neighbors(v))
        rots.append([nbrs[int(i)] for i in rng.permutation(len(nbrs))])
    return EmbeddedGraph(rots)


@pytest.fixture
def triangle():
    return EmbeddedGraph([[1, 2], [2, 0], [0, 1]])
