from __future__ import annotations

import pytest
from hypothesis import given, settings

from cdcover.generators import complete, petersen
from cdcover.graph import (DomainError, DuplicateEdgeError, Graph, LoopError, ParseError,
                           find_bridges, induced_subgraph, is_connected, is_valid_input,
                           parity_partition, parse_edge_list, to_dot, to_edge_list)

from conftest import small_graphs


def test_parse_triangle():
    g = parse_edge_list("0 1\n1 2\n2 0")
    assert g.vertices == (0, 1, 2)
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_parse_rejects_loop_and_duplicate():
    with pytest.raises(LoopError):
        parse_edge_list("0 0")
    with pytest.raises(DuplicateEdgeError) as exc:
        parse_edge_list("# c\n0 1\n0 1")
    assert exc.value.lineno == 3


@pytest.mark.parametrize("text", ["0 1 2", "a b", "-1 2"])
def test_parse_bad_lines(text):
    with pytest.raises(ParseError):
        parse_edge_list(text)


def test_edge_list_round_trip():
    g = petersen()
    assert parse_edge_list(to_edge_list(g)) == g
    assert to_dot(complete(3)).startswith("graph {")


def test_adjacency_sorted():
    g = Graph.from_edges([(3, 1), (1, 0), (1, 2)])
    assert g.adjacency[1] == (0, 2, 3)


def test_parity():
    assert parity_partition(complete(4)) == (frozenset(range(4)), frozenset())
    assert parity_partition(complete(5)) == (frozenset(), frozenset(range(5)))
    assert parity_partition(Graph.from_edges([(0, 1), (1, 2)])) == ({0, 2}, {1})


def test_bridges_examples():
    assert find_bridges(Graph.from_edges([(0, 1), (1, 2)])) == {(0, 1), (1, 2)}
    assert find_bridges(complete(3)) == set()
    two = Graph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    assert find_bridges(two) == {(2, 3)}


@settings(max_examples=150)
@given(small_graphs(3, 8))
def test_bridges_match_exhaustive_removal(g):
    expected = set()
    for e in g.edges:
        h = g.without_edges([e])
        if e[1] not in _component_of(h, e[0]):
            expected.add(e)
    assert find_bridges(g) == expected


def _component_of(g, v):
    seen, stack = {v}, [v]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def test_valid_input_verdicts():
    assert is_valid_input(petersen()).ok
    v = is_valid_input(Graph.from_edges([(0, 1), (1, 2)]))
    assert not v.ok and v.code in ("low_degree", "bridge")
    v = is_valid_input(Graph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]))
    assert v.code == "disconnected"
    bridged = Graph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    v = is_valid_input(bridged)
    assert v.code == "bridge" and (2, 3) in v.witness


def test_induced_subgraph():
    k4 = complete(4)
    assert induced_subgraph(k4, [(0, 1), (1, 2), (0, 2)]) == complete(3)
    assert len(induced_subgraph(k4, []).edges) == 0
    c5 = induced_subgraph(complete(5), [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert all(c5.degree(v) == 2 for v in c5.vertices) and is_connected(c5)
    with pytest.raises(DomainError):
        induced_subgraph(k4, [(0, 9)])
