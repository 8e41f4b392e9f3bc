from __future__ import annotations

from itertools import combinations

from hypothesis import assume, strategies as st

from cdcover.generators import random_cubic_bridgeless
from cdcover.graph import Graph, is_valid_input


@st.composite
def small_graphs(draw, min_n=3, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, picks) if keep]
    assume(edges)
    return Graph.from_edges(edges)


@st.composite
def valid_graphs(draw, max_n=7):
    g = draw(small_graphs(4, max_n))
    assume(is_valid_input(g).ok)
    return g


cubic_graphs = st.builds(random_cubic_bridgeless,
                         st.sampled_from([4, 6, 8, 10, 12]), st.integers(0, 10**6))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
