from __future__ import annotations

import pytest
from hypothesis import strategies as st

from targetctl.graph import DiGraph
from targetctl.io import load_fixture

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fig1() -> DiGraph:
    return load_fixture("fig01").graph


@pytest.fixture(scope="session")
def fig5() -> DiGraph:
    return load_fixture("fig05").graph


@pytest.fixture(scope="session")
def fig7() -> DiGraph:
    return load_fixture("fig07").graph


@pytest.fixture(scope="session")
def fig8() -> DiGraph:
    return load_fixture("fig08").graph


@pytest.fixture(scope="session")
def fig10() -> DiGraph:
    return load_fixture("fig10").graph


@pytest.fixture(scope="session")
def fig11() -> DiGraph:
    return load_fixture("fig11").graph


CASE_STUDY_TARGETS = (2, 3, 6, 8, 10, 13, 15, 16, 17, 20)


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 8) -> DiGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    arcs = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return DiGraph(n, frozenset(arcs))


@st.composite
def graph_and_subset(draw, min_n: int = 1, max_n: int = 8, nonempty: bool = False):
    g = draw(digraphs(min_n, max_n))
    subset = draw(st.sets(st.integers(1, g.n), min_size=1 if nonempty else 0))
    return g, sorted(subset)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
