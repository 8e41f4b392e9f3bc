from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from cdcover.generators import complete, corpus_manifest, cycle, petersen
from cdcover.graph import Graph
from cdcover.oracle import OracleLimits, ResourceError, SizeError, brute_force_cdc, enumerate_cycles
from cdcover.verify import verify_cdc
from cdcover.walks import Walk

from conftest import small_graphs

K4_FACES = [Walk((0, 1, 2, 0)), Walk((0, 1, 3, 0)), Walk((0, 2, 3, 0)), Walk((1, 2, 3, 1))]


def test_verify_examples():
    assert verify_cdc(complete(3), [Walk((0, 1, 2, 0))] * 2).ok
    assert verify_cdc(complete(4), K4_FACES).ok
    # two Hamiltonian cycles v4v1v3v2v5v4, v4v3v5v1v2v4 (v_i -> i-1)
    rep = verify_cdc(complete(5), [(3, 0, 2, 1, 4, 3), (3, 2, 4, 0, 1, 3)])
    assert not rep.ok
    assert set(rep.histogram.values()) == {1}
    assert len(rep.under) == 10 and rep.over == [] and rep.malformed == []


def test_verify_flags_malformed_and_over():
    rep = verify_cdc(complete(3), [(0, 1, 0), (0, 1, 2, 0), (0, 1, 2, 0)])
    assert rep.malformed == [0] and rep.over == [(0, 1)]
    rep = verify_cdc(complete(3), [(0, 1, 5, 0)])
    assert rep.malformed == [0]


@given(st.randoms(use_true_random=False))
def test_verify_invariant_under_rotation_reversal_permutation(rnd):
    cycles = []
    for c in K4_FACES:
        body = list(c.vertices[:-1])
        k = rnd.randrange(len(body))
        body = body[k:] + body[:k]
        if rnd.random() < 0.5:
            body.reverse()
        cycles.append(tuple(body) + (body[0],))
    rnd.shuffle(cycles)
    assert verify_cdc(complete(4), cycles).ok


def test_enumerate_examples():
    k4 = enumerate_cycles(complete(4), 4)
    assert len(k4) == 7
    assert sum(len(c) == 3 for c in k4) == 4
    assert len(enumerate_cycles(cycle(5), 5)) == len(enumerate_cycles(cycle(5), 9)) == 1
    assert enumerate_cycles(complete(3), 3) == [Walk((0, 1, 2, 0))]
    with pytest.raises(SizeError):
        enumerate_cycles(complete(7), cap=10)
    with pytest.raises(ValueError):
        enumerate_cycles(complete(4), 2)


def _exhaustive_count(g: Graph, k: int) -> int:
    """Cycles of length k by checking every vertex subset and ordering."""
    count = 0
    for sub in combinations(g.vertices, k):
        first = sub[0]
        for rest in permutations(sub[1:]):
            if rest[0] > rest[-1]:
                continue
            seq = (first,) + rest + (first,)
            if all(g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
                count += 1
    return count


def _trace_counts(g: Graph) -> tuple[int, int]:
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(idx)
    a = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        a[idx[u]][idx[v]] = a[idx[v]][idx[u]] = 1

    def mul(x, y):
        return [[sum(x[i][t] * y[t][j] for t in range(n)) for j in range(n)] for i in range(n)]

    a2 = mul(a, a)
    a3, a4 = mul(a2, a), mul(a2, a2)
    tr3 = sum(a3[i][i] for i in range(n))
    tr4 = sum(a4[i][i] for i in range(n))
    deg = [sum(r) for r in a]
    m = len(g.edges)
    return tr3 // 6, (tr4 - 2 * sum(d * d for d in deg) + 2 * m) // 8


@settings(max_examples=60, deadline=None)
@given(small_graphs(3, 7))
def test_enumeration_matches_independent_counts(g):
    cycles = enumerate_cycles(g)
    by_len = {}
    for c in cycles:
        by_len[len(c)] = by_len.get(len(c), 0) + 1
    for k in range(3, len(g.vertices) + 1):
        assert by_len.get(k, 0) == _exhaustive_count(g, k)
    tri, quad = _trace_counts(g)
    assert by_len.get(3, 0) == tri and by_len.get(4, 0) == quad
    assert len(set(cycles)) == len(cycles)
    assert all(c.canonical() == c for c in cycles)


def test_oracle_examples():
    assert brute_force_cdc(complete(4)) == K4_FACES
    assert brute_force_cdc(complete(3)) == [Walk((0, 1, 2, 0))] * 2
    found = brute_force_cdc(petersen())
    assert verify_cdc(petersen(), found).ok


def test_oracle_limits():
    with pytest.raises(ResourceError):
        brute_force_cdc(complete(7))
    with pytest.raises(ResourceError):
        brute_force_cdc(petersen(), OracleLimits(node_limit=1))


def test_oracle_small_corpus_verifies():
    for name, g in corpus_manifest():
        if len(g.edges) <= 20:
            found = brute_force_cdc(g)
            assert found is not None and verify_cdc(g, found).ok, name
