"""Walks in a graph and their classification.

The lattice is walk > trail > {circuit, path} > cycle for edge-simple
walks, and fork > segment / double-cycle for closed walks that pass every
edge exactly twice.  A branch is a closed walk mixing once- and
twice-covered edges where the twice-covered edges are cut edges of the
walk's induced graph.
"""
from __future__ import annotations

import dataclasses
from collections import Counter, defaultdict
from typing import Hashable, Iterable, Sequence, TypeVar

from .graph import Edge, Graph, GraphError, edge, find_bridges, induced_subgraph

N = TypeVar("N", bound=Hashable)

KINDS = ("walk", "trail", "circuit", "path", "cycle", "fork", "segment", "double-cycle", "branch")


class InvalidWalkError(GraphError):
    pass


class KindError(GraphError):
    """Operation applied to a walk of the wrong kind."""


@dataclasses.dataclass(frozen=True, order=True)
class Walk:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidWalkError("walk needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def closed(self) -> bool:
        return len(self.vertices) >= 2 and self.vertices[0] == self.vertices[-1]

    def __len__(self) -> int:
        """Length in edges."""
        return len(self.vertices) - 1

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def canonical(self) -> "Walk":
        return Walk(canonical_sequence(self.vertices))

    def reversed(self) -> "Walk":
        return Walk(self.vertices[::-1])


def canonical_sequence(vs: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation/reflection of a closed walk; open walks
    only choose a direction."""
    vs = tuple(vs)
    if len(vs) >= 2 and vs[0] == vs[-1]:
        body = vs[:-1]
        n = len(body)
        best = None
        for seq in (body, body[::-1]):
            for i in range(n):
                cand = seq[i:] + seq[:i]
                if best is None or cand < best:
                    best = cand
        return best + (best[0],)
    return min(vs, vs[::-1])


def check_walk(g: Graph, w: Walk) -> None:
    vs = w.vertices
    if vs[0] not in g.adjacency:
        raise InvalidWalkError(f"vertex {vs[0]} not in graph")
    for a, b in zip(vs, vs[1:]):
        if not g.has_edge(a, b):
            raise InvalidWalkError(f"{a} and {b} are not adjacent")


def walk_coverage(w: Walk) -> Counter:
    """Per-edge traversal counts."""
    return Counter(w.edges())


def coverage_of(walks: Iterable[Walk], multiplicity: int = 1) -> Counter:
    total: Counter = Counter()
    for w in walks:
        for e in w.edges():
            total[e] += multiplicity
    return total


def vertex_passes(w: Walk) -> Counter:
    """How many times a closed walk passes each vertex (the closing repeat
    is not a second pass)."""
    vs = w.vertices[:-1] if w.closed else w.vertices
    return Counter(vs)


def classify_walk(g: Graph, w: Walk) -> str:
    check_walk(g, w)
    vs = w.vertices
    cov = walk_coverage(w)
    mults = set(cov.values())
    if not w.closed:
        if len(vs) > 1 and mults != {1}:
            return "walk"
        return "path" if len(set(vs)) == len(vs) else "trail"
    passes = vertex_passes(w)
    if mults == {1}:
        if len(w) >= 3 and max(passes.values()) == 1:
            return "cycle"
        return "circuit"
    if mults == {2}:
        if max(passes.values()) <= 2:
            sub = induced_subgraph(g, cov)
            if all(sub.degree(v) == 2 for v in sub.vertices) and len(sub.edges) >= 3 \
                    and len(sub.vertices) == len(sub.edges) and _connected_edges(cov):
                return "double-cycle"
            return "segment"
        return "fork"
    if mults == {1, 2} and is_branch_coverage(g, cov):
        return "branch"
    return "walk"


def _connected_edges(cov) -> bool:
    sub = Graph.from_edges(cov)
    seen = {sub.vertices[0]}
    stack = [sub.vertices[0]]
    while stack:
        u = stack.pop()
        for w in sub.adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(sub.vertices)


def is_branch_coverage(g: Graph, cov: Counter) -> bool:
    """Once-edges form an even subgraph; twice-edges are exactly the cut edges."""
    if any(m not in (1, 2) for m in cov.values()):
        return False
    deg: Counter = Counter()
    for (u, v), m in cov.items():
        if m == 1:
            deg[u] += 1
            deg[v] += 1
    if any(d % 2 for d in deg.values()):
        return False
    cut = find_bridges(induced_subgraph(g, cov))
    twice = {e for e, m in cov.items() if m == 2}
    return cut == twice


def fork_vertex_roles(g: Graph, w: Walk) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """(ending, inner, bifurcation) vertices of a fork or segment.

    Ending vertices are passed once, inner exactly twice, bifurcation more
    than twice.
    """
    kind = classify_walk(g, w)
    if kind not in ("fork", "segment"):
        raise KindError(f"expected fork or segment, got {kind}")
    passes = vertex_passes(w)
    ending = frozenset(v for v, c in passes.items() if c == 1)
    inner = frozenset(v for v, c in passes.items() if c == 2)
    bif = frozenset(v for v, c in passes.items() if c > 2)
    return ending, inner, bif


def hierholzer(adj: dict[N, list[tuple[N, int]]], start: N) -> list[N]:
    """Euler trail/circuit from ``start`` over an edge-labelled multigraph.

    ``adj[v]`` lists ``(neighbour, edge_id)`` in preference order; every
    edge id must appear in both endpoint lists.  Returns the vertex
    sequence; the caller checks that every edge was used.
    """
    used: set[int] = set()
    pos = {v: 0 for v in adj}
    stack = [start]
    out: list[N] = []
    while stack:
        v = stack[-1]
        lst = adj[v]
        i = pos[v]
        while i < len(lst) and lst[i][1] in used:
            i += 1
        pos[v] = i
        if i == len(lst):
            out.append(stack.pop())
        else:
            w, eid = lst[i]
            used.add(eid)
            stack.append(w)
    out.reverse()
    return out


def euler_circuit(multiset: Counter, start: int | None = None) -> Walk:
    """Closed walk traversing each edge as many times as its multiplicity.

    The multigraph must be connected with even degrees.  Smallest
    neighbour first.
    """
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    eid = 0
    for (u, v) in sorted(multiset):
        for _ in range(multiset[(u, v)]):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
            eid += 1
    if not adj:
        raise KindError("empty edge multiset")
    for lst in adj.values():
        lst.sort()
    if any(len(lst) % 2 for lst in adj.values()):
        raise KindError("odd degree in edge multiset")
    if start is None:
        start = min(adj)
    seq = hierholzer(dict(adj), start)
    if len(seq) - 1 != eid:
        raise KindError("edge multiset is disconnected")
    return Walk(tuple(seq))


def multiset_components(multiset: Counter) -> list[Counter]:
    """Split an edge multiset into connected pieces, ordered by smallest edge."""
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v), m in multiset.items():
        if m:
            parent[find(u)] = find(v)
    groups: dict[int, Counter] = defaultdict(Counter)
    for e, m in multiset.items():
        if m:
            groups[find(e[0])][e] = m
    return sorted(groups.values(), key=lambda c: min(c))


def peel_sequence(seq: Sequence[N]) -> tuple[list[list[N]], list[N]]:
    """Stack scan: on revisiting a stacked vertex pop the enclosed closed
    sub-walk.  Returns (closed pieces, residue)."""
    stack: list[N] = []
    where: dict[N, int] = {}
    pieces = []
    for v in seq:
        if v in where:
            i = where[v]
            piece = stack[i:] + [v]
            for u in stack[i + 1:]:
                del where[u]
            del stack[i + 1:]
            pieces.append(piece)
        else:
            where[v] = len(stack)
            stack.append(v)
    return pieces, stack


def peel_cycles(w: Walk) -> list[Walk]:
    """Decompose a circuit into edge-disjoint cycles."""
    if not w.closed:
        raise KindError("peel_cycles needs a closed walk")
    if len(set(w.edges())) != len(w):
        raise KindError("peel_cycles needs a circuit (no repeated edge)")
    pieces, residue = peel_sequence(w.vertices)
    assert len(residue) == 1
    return [Walk(tuple(p)) for p in pieces]


def decompose_even(multiset: Counter) -> list[Walk]:
    """Cycles partitioning an even-degree simple edge set."""
    out: list[Walk] = []
    for comp in multiset_components(multiset):
        if any(m != 1 for m in comp.values()):
            raise KindError("decompose_even needs multiplicities of 1")
        out.extend(peel_cycles(euler_circuit(comp)))
    return out


def path_between(seq: Sequence[int], a: int, b: int) -> list[int]:
    """Sub-sequence of an open path from ``a`` to ``b`` (either direction)."""
    i, j = seq.index(a), seq.index(b)
    if i <= j:
        return list(seq[i:j + 1])
    return list(seq[j:i + 1])[::-1]


def cycle_arcs(cycle: Sequence[int], a: int, b: int) -> tuple[list[int], list[int]]:
    """The two arcs of a cycle from ``a`` to ``b`` (forward first)."""
    body = list(cycle[:-1])
    i = body.index(a)
    rot = body[i:] + body[:i]
    j = rot.index(b)
    fwd = rot[:j + 1]
    back = [a] + rot[j:][::-1]
    return fwd, back
