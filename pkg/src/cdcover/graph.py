"""Simple undirected graphs, structural predicates and the edge-list format."""
from __future__ import annotations

import dataclasses
from collections import deque
from typing import Iterable, Iterator

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or edge-list input."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class LoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class DomainError(GraphError):
    """An edge or vertex outside the host graph was referenced."""


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclasses.dataclass(frozen=True)
class Graph:
    """Immutable simple graph; vertices and edges are kept sorted."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    adjacency: dict[int, tuple[int, ...]] = dataclasses.field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        es = tuple(sorted({edge(u, v) for u, v in self.edges}))
        if len(es) != len(self.edges):
            raise GraphError("duplicate edges")
        vset = set(vs)
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for u, v in es:
            if u == v:
                raise GraphError(f"loop at {u}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {u}-{v} has an undeclared endpoint")
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        object.__setattr__(self, "adjacency", {v: tuple(sorted(n)) for v, n in adj.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        es = [edge(u, v) for u, v in edges]
        vs = set(vertices)
        for u, v in es:
            vs.update((u, v))
        return cls(tuple(vs), tuple(es))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        gone = {edge(*e) for e in removed}
        return Graph(self.vertices, tuple(e for e in self.edges if e not in gone))


def parse_edge_list(text: str) -> Graph:
    """Parse the ``u v`` per line format; ``#`` starts a comment."""
    seen: set[Edge] = set()
    order: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two vertex ids, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer vertex id in {raw!r}") from None
        if u < 0 or v < 0:
            raise ParseError(lineno, "vertex ids must be non-negative")
        if u == v:
            raise LoopError(lineno, f"loop edge {u}-{v}")
        e = edge(u, v)
        if e in seen:
            raise DuplicateEdgeError(lineno, f"duplicate edge {u}-{v}")
        seen.add(e)
        order.append(e)
    return Graph.from_edges(order)


def to_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def to_dot(g: Graph) -> str:
    body = "".join(f"  {u} -- {v};\n" for u, v in g.edges)
    isolated = "".join(f"  {v};\n" for v in g.vertices if not g.adjacency[v])
    return "graph {\n" + isolated + body + "}\n"


def parity_partition(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    """Split vertices into (odd degree, even degree)."""
    odd = frozenset(v for v in g.vertices if g.degree(v) % 2)
    return odd, frozenset(g.vertices) - odd


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen: set[int] = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def find_bridges(g: Graph) -> frozenset[Edge]:
    """Cut edges via one iterative low-link DFS (smallest neighbour first)."""
    order: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges = set()
    counter = 0
    for root in g.vertices:
        if root in order:
            continue
        order[root] = low[root] = counter
        counter += 1
        # frames: (vertex, parent, neighbour iterator)
        stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue  # simple graph: a single parallel edge cannot exist
                if w in order:
                    low[v] = min(low[v], order[w])
                else:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(g.adjacency[w])))
                    break
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > order[u]:
                        bridges.add(edge(u, v))
    return frozenset(bridges)


@dataclasses.dataclass(frozen=True)
class Verdict:
    ok: bool
    code: str = "ok"
    witness: tuple = ()

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.code}: {list(self.witness)}"


def is_valid_input(g: Graph) -> Verdict:
    """Accept connected, bridgeless graphs with at least 3 vertices and min degree 2."""
    if len(g) < 3:
        return Verdict(False, "too_small", (len(g),))
    low = [v for v in g.vertices if g.degree(v) < 2]
    if low:
        return Verdict(False, "low_degree", tuple(low))
    comps = components(g)
    if len(comps) > 1:
        return Verdict(False, "disconnected", tuple(tuple(c) for c in comps))
    bridges = find_bridges(g)
    if bridges:
        return Verdict(False, "bridge", tuple(sorted(bridges)))
    return Verdict(True)


def induced_subgraph(g: Graph, es: Iterable[Edge]) -> Graph:
    """The graph spanned by ``es``: exactly those edges and their endpoints."""
    chosen = {edge(*e) for e in es}
    unknown = chosen - g.edge_set()
    if unknown:
        raise DomainError(f"edges not in graph: {sorted(unknown)}")
    return Graph.from_edges(chosen)
