"""Two-sheet lift of a graph, its Eulerian trail, and projection back down."""
from __future__ import annotations

import dataclasses
from collections import Counter
from typing import Sequence

from .graph import Graph, GraphError, is_valid_input, parity_partition
from .walks import KindError, Walk, hierholzer, peel_sequence

LVertex = tuple[int, int]  # (base vertex, sheet tag 1|2)
LEdge = tuple[LVertex, LVertex]


class InputError(GraphError):
    pass


class StructureError(GraphError):
    """The lift is not Eulerian; indicates a construction bug."""


def ledge(a: LVertex, b: LVertex) -> LEdge:
    return (a, b) if a < b else (b, a)


def is_aux(e: LEdge) -> bool:
    return e[0][0] == e[1][0]


@dataclasses.dataclass(frozen=True)
class LiftedGraph:
    base: Graph
    auxiliary: tuple[int, ...]  # base vertices carrying an auxiliary edge

    @property
    def all_even(self) -> bool:
        odd, _ = parity_partition(self.base)
        return not odd

    @property
    def vertices(self) -> list[LVertex]:
        return [(v, t) for v in self.base.vertices for t in (1, 2)]

    @property
    def edges(self) -> list[LEdge]:
        out = [((u, t), (v, t)) for t in (1, 2) for u, v in self.base.edges]
        out += [((v, 1), (v, 2)) for v in self.auxiliary]
        return sorted(out)

    def neighbors(self, x: LVertex) -> list[LVertex]:
        """Copy neighbours by vertex id, auxiliary partner last."""
        v, t = x
        out = [(w, t) for w in self.base.adjacency[v]]
        if v in self._aux_set:
            out.append((v, 3 - t))
        return out

    def degree(self, x: LVertex) -> int:
        return len(self.neighbors(x))

    def has_edge(self, a: LVertex, b: LVertex) -> bool:
        if a[0] == b[0]:
            return a[1] != b[1] and a[0] in self._aux_set
        return a[1] == b[1] and self.base.has_edge(a[0], b[0])

    @property
    def _aux_set(self) -> frozenset[int]:
        return frozenset(self.auxiliary)


@dataclasses.dataclass(frozen=True)
class LiftedWalk:
    vertices: tuple[LVertex, ...]

    @property
    def closed(self) -> bool:
        return len(self.vertices) >= 2 and self.vertices[0] == self.vertices[-1]

    def edges(self) -> list[LEdge]:
        vs = self.vertices
        return [ledge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def aux_count(self) -> int:
        return sum(1 for e in self.edges() if is_aux(e))

    def __len__(self) -> int:
        return len(self.vertices) - 1

    def serialize(self) -> str:
        toks = " ".join(f"({v},{t})" for v, t in self.vertices)
        return f"aux={self.aux_count()}\n{toks}\n"


def build_lift(g: Graph) -> LiftedGraph:
    verdict = is_valid_input(g)
    if not verdict.ok:
        raise InputError(verdict.describe())
    odd, _ = parity_partition(g)
    aux = tuple(sorted(odd)) if odd else (g.vertices[0],)
    return LiftedGraph(g, aux)


def eulerian_trail(lg: LiftedGraph) -> LiftedWalk:
    adj: dict[LVertex, list[tuple[LVertex, int]]] = {}
    ids: dict[LEdge, int] = {e: i for i, e in enumerate(lg.edges)}
    for x in lg.vertices:
        adj[x] = [(y, ids[ledge(x, y)]) for y in lg.neighbors(x)]
    odd = [x for x in lg.vertices if len(adj[x]) % 2]
    if not odd:
        start = min(lg.vertices)
    elif len(odd) == 2:
        start = min(odd)
    else:
        raise StructureError(f"{len(odd)} odd lifted vertices")
    seq = hierholzer(adj, start)
    if len(seq) - 1 != len(ids):
        raise StructureError("lifted graph is disconnected")
    return LiftedWalk(tuple(seq))


def project(lg: LiftedGraph, w: LiftedWalk | Sequence[LVertex]) -> Walk:
    """Drop sheet tags and auxiliary hops; merge the repeats they leave."""
    vs = w.vertices if isinstance(w, LiftedWalk) else tuple(w)
    out: list[int] = []
    for v, _ in vs:
        if not out or out[-1] != v:
            out.append(v)
    return Walk(tuple(out))


def peel_lifted(w: LiftedWalk) -> list[LiftedWalk]:
    if not w.closed:
        raise KindError("peel needs a closed lifted walk")
    pieces, _ = peel_sequence(w.vertices)
    return [LiftedWalk(tuple(p)) for p in pieces]


def split_at_bridge(lg: LiftedGraph, w: LiftedWalk) -> list[LiftedWalk]:
    """All-even case: cut the open trail at its single auxiliary edge into
    the two closed sheet circuits."""
    vs = w.vertices
    for i in range(len(vs) - 1):
        if vs[i][0] == vs[i + 1][0]:
            return [LiftedWalk(vs[:i + 1]), LiftedWalk(vs[i + 1:])]
    raise StructureError("no auxiliary edge on trail")


def lift_one_sheet(w: Walk, tag: int = 1) -> LiftedWalk:
    return LiftedWalk(tuple((v, tag) for v in w.vertices))


def lift_two_sheet(segment_path: Sequence[int]) -> LiftedWalk:
    """A segment's lift: out along sheet 1, cross, back on sheet 2, cross."""
    path = list(segment_path)
    seq = [(v, 1) for v in path] + [(v, 2) for v in reversed(path)] + [(path[0], 1)]
    return LiftedWalk(tuple(seq))


def lifted_coverage(w: LiftedWalk) -> Counter:
    return Counter(w.edges())
