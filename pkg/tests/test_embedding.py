from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from cdcover.embedding import (K5_TORUS_FACES, K5_TORUS_ROTATION, DomainError, RotationError,
                               RotationSystem, doubled_edges, face_trace, faces_as_cdc,
                               genus_bound, inductive_complete_embedding, k5_torus_fixture,
                               search_k5_torus_rotation)
from cdcover.generators import complete, cycle
from cdcover.walks import canonical_sequence, classify_walk, coverage_of

PLANAR_K4 = {0: (1, 2, 3), 1: (0, 3, 2), 2: (0, 1, 3), 3: (0, 2, 1)}


def test_planar_k4():
    fs = face_trace(RotationSystem(complete(4), PLANAR_K4))
    assert len(fs.faces) == 4 and fs.chi == 2 and fs.genus == 0
    assert all(len(f) == 3 for f in fs.faces)
    assert faces_as_cdc(fs).ok


def test_triangle_two_faces():
    fs = face_trace(RotationSystem(complete(3), {0: (1, 2), 1: (0, 2), 2: (0, 1)}))
    assert len(fs.faces) == 2 and fs.chi == 2


def test_c5_faces_are_cycles():
    g = cycle(5)
    fs = face_trace(RotationSystem(g, {v: g.adjacency[v] for v in g.vertices}))
    assert len(fs.faces) == 2 and faces_as_cdc(fs).ok


def test_rotation_error():
    with pytest.raises(RotationError):
        RotationSystem(complete(3), {0: (1,), 1: (0, 2), 2: (0, 1)})


def test_genus_bound():
    assert genus_bound(3) == (0, 2)
    assert genus_bound(5) == (1, 0)
    assert genus_bound(8) == (10, -18)
    with pytest.raises(DomainError):
        genus_bound(2)
    for k in range(3, 20):
        g, chi = genus_bound(k)
        g2, chi2 = genus_bound(k + 1)
        assert chi2 == chi - 2 * (k - 3) and chi2 == 2 - (k - 3) * (k - 2)


@pytest.mark.parametrize("k", range(3, 9))
def test_inductive_embedding_hits_bound(k):
    rs = inductive_complete_embedding(k)
    assert rs.host == complete(k)
    fs = face_trace(rs)
    assert (fs.genus, fs.chi) == genus_bound(k)


def test_k5_fixture_matches_listed_faces():
    fs = face_trace(k5_torus_fixture())
    got = sorted(f.canonical().vertices for f in fs.faces)
    want = sorted(canonical_sequence(f + (f[0],)) for f in K5_TORUS_FACES)
    assert got == want
    assert fs.chi == 0 and fs.genus == 1
    (long,) = [f for f in fs.faces if len(f) == 8]
    assert classify_walk(complete(5), long) != "cycle"
    assert doubled_edges(long) == {(3, 4), (1, 2)}
    rep = faces_as_cdc(fs)
    assert not rep.ok and [fs.faces[i] for i in rep.malformed] == [long]
    assert set(rep.histogram.values()) == {2}


def test_frozen_rotation_is_reproducible():
    assert search_k5_torus_rotation() == K5_TORUS_ROTATION


def test_json_round_trip():
    rs = inductive_complete_embedding(6)
    back = RotationSystem.from_json(rs.to_json())
    assert back == rs
    d = face_trace(rs).to_json()
    assert set(d) == {"chi", "genus", "faces"}


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 7), st.randoms(use_true_random=False))
def test_random_rotations_invariants(k, rnd):
    g = complete(k)
    rot = {}
    for v in g.vertices:
        nb = list(g.adjacency[v])
        rnd.shuffle(nb)
        rot[v] = tuple(nb)
    fs = face_trace(RotationSystem(g, rot))
    assert sum(len(f) for f in fs.faces) == 2 * len(g.edges)
    assert fs.chi % 2 == 0 and fs.genus >= 0
    darts = Counter((a, b) for f in fs.faces for a, b in zip(f.vertices, f.vertices[1:]))
    assert set(darts.values()) == {1} and len(darts) == 2 * len(g.edges)
    assert set(coverage_of(fs.faces).values()) == {2}
