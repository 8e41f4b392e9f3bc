from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings

from cdcover.generators import complete, petersen
from cdcover.graph import Graph
from cdcover.lift import (InputError, LiftedWalk, build_lift, eulerian_trail, is_aux,
                          lift_two_sheet, lifted_coverage, project, split_at_bridge)
from cdcover.walks import Walk

from conftest import valid_graphs


def test_lift_k4():
    lg = build_lift(complete(4))
    assert lg.auxiliary == (0, 1, 2, 3)
    assert len(lg.edges) == 16
    assert all(lg.degree(x) == 4 for x in lg.vertices)


def test_lift_k5_single_aux():
    lg = build_lift(complete(5))
    assert lg.auxiliary == (0,) and lg.all_even
    degs = {x: lg.degree(x) for x in lg.vertices}
    assert degs[(0, 1)] == degs[(0, 2)] == 5
    assert all(d == 4 for x, d in degs.items() if x[0] != 0)


def test_lift_petersen():
    lg = build_lift(petersen())
    assert len(lg.auxiliary) == 10 and len(lg.edges) == 40
    assert all(lg.degree(x) == 4 for x in lg.vertices)


def test_lift_rejects_invalid():
    with pytest.raises(InputError):
        build_lift(Graph.from_edges([(0, 1), (1, 2)]))


def test_project_examples():
    lg = build_lift(complete(5))
    assert project(lg, LiftedWalk(((3, 1), (4, 1), (3, 1)))) == Walk((3, 4, 3))
    assert project(lg, LiftedWalk(((0, 1), (0, 2)))) == Walk((0,))
    seg = LiftedWalk(((1, 1), (2, 1), (2, 2), (1, 2), (1, 1)))
    assert project(lg, seg) == Walk((1, 2, 1))


def test_trail_triangle_open():
    lg = build_lift(complete(3))
    t = eulerian_trail(lg)
    assert len(t) == 7 and not t.closed
    assert {t.vertices[0], t.vertices[-1]} == {(0, 1), (0, 2)}
    halves = split_at_bridge(lg, t)
    assert all(h.closed for h in halves)


def test_trail_k4_closed():
    lg = build_lift(complete(4))
    t = eulerian_trail(lg)
    assert t.closed and len(t) == 16
    assert lifted_coverage(t) == Counter({e: 1 for e in lg.edges})


def test_two_sheet_segment_lift():
    lw = lift_two_sheet([1, 2, 3])
    assert lw.closed and lw.aux_count() == 2
    assert sum(is_aux(e) for e in lw.edges()) == 2


def test_serialize_counts_aux():
    lg = build_lift(complete(4))
    text = eulerian_trail(lg).serialize()
    assert text.startswith("aux=4\n")


@settings(max_examples=40, deadline=None)
@given(valid_graphs())
def test_trail_uses_every_lifted_edge_once(g):
    lg = build_lift(g)
    t = eulerian_trail(lg)
    assert lifted_coverage(t) == Counter({e: 1 for e in lg.edges})
    assert t.closed == (not lg.all_even)
    # projection double covers the base, aux hops vanish
    assert Counter(project(lg, t).edges()) == Counter({e: 2 for e in g.edges})
