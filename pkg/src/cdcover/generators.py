"""Named graph families and seeded random bridgeless cubic graphs.

Vertex numbering per family:

* ``complete(n)``: ``0..n-1``.
* ``cycle(n)``: ``0..n-1`` in order.
* ``theta(a, b, c)``: hubs ``0`` and ``1``; internal vertices of the three
  paths follow in path order, starting at ``2``.
* ``prism(n)``: outer cycle ``0..n-1``, inner cycle ``n..2n-1``, spoke
  ``i -- n+i``.
* ``petersen``: the ten 2-subsets of ``{0..4}`` in lexicographic order;
  disjoint subsets are adjacent.
* ``flower_snark(k)``: star ``i`` has centre ``4i`` and leaves ``4i+1``
  (b), ``4i+2`` (c), ``4i+3`` (d); the b's form a k-cycle and
  ``c_0..c_{k-1} d_0..d_{k-1}`` a 2k-cycle.

Random cubic graphs use SplitMix64 (constants below) so the corpus is
reproducible independent of the host language's RNG.
"""
from __future__ import annotations

import dataclasses
from itertools import combinations

from .graph import Graph, GraphError, edge, find_bridges, is_connected

FAMILIES = ("complete", "cycle", "theta", "prism", "petersen", "flower_snark")

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SpecError(GraphError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))

    @property
    def name(self) -> str:
        if self.family == "complete":
            return f"K{self.params[0]}"
        if self.family == "petersen":
            return "petersen"
        return f"{self.family}({','.join(map(str, self.params))})"


def complete(n: int) -> Graph:
    if n < 3:
        raise SpecError("complete graph needs n >= 3")
    return Graph.from_edges(combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise SpecError("cycle needs n >= 3")
    return Graph.from_edges((i, (i + 1) % n) for i in range(n))


def theta(a: int, b: int, c: int) -> Graph:
    lens = (a, b, c)
    if min(lens) < 1 or lens.count(1) > 1:
        raise SpecError("theta needs path lengths >= 1 with at most one equal to 1")
    edges = []
    nxt = 2
    for length in lens:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(edges)


def prism(n: int) -> Graph:
    if n < 3:
        raise SpecError("prism needs n >= 3")
    edges = []
    for i in range(n):
        edges += [(i, (i + 1) % n), (n + i, n + (i + 1) % n), (i, n + i)]
    return Graph.from_edges(edges)


def petersen() -> Graph:
    subsets = list(combinations(range(5), 2))
    return Graph.from_edges(
        (i, j) for i, j in combinations(range(10), 2) if not set(subsets[i]) & set(subsets[j])
    )


def flower_snark(k: int) -> Graph:
    if k < 3 or k % 2 == 0:
        raise SpecError("flower snark needs odd k >= 3")

    def a(i): return 4 * i
    def b(i): return 4 * i + 1
    def c(i): return 4 * i + 2
    def d(i): return 4 * i + 3

    edges = []
    for i in range(k):
        j = (i + 1) % k
        edges += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(j))]
        if i < k - 1:
            edges += [(c(i), c(j)), (d(i), d(j))]
    edges += [(c(k - 1), d(0)), (d(k - 1), c(0))]
    return Graph.from_edges(edges)


def make(spec: FamilySpec) -> Graph:
    p = spec.params
    want = {"complete": 1, "cycle": 1, "theta": 3, "prism": 1, "petersen": 0, "flower_snark": 1}
    if len(p) != want[spec.family]:
        raise SpecError(f"{spec.family} takes {want[spec.family]} parameter(s), got {len(p)}")
    if spec.family == "complete":
        return complete(*p)
    if spec.family == "cycle":
        return cycle(*p)
    if spec.family == "theta":
        return theta(*p)
    if spec.family == "prism":
        return prism(*p)
    if spec.family == "petersen":
        return petersen()
    return flower_snark(*p)


def random_cubic_bridgeless(n: int, seed: int) -> Graph:
    """Start from prism(n/2) (K4 when n == 4) and attempt 10*n seeded
    double-edge swaps, keeping only those that leave the graph simple,
    connected and bridgeless."""
    if n < 4 or n % 2:
        raise SpecError("random cubic graph needs even n >= 4")
    g = complete(4) if n == 4 else prism(n // 2)
    rng = SplitMix64(seed)
    edges = list(g.edges)
    present = set(edges)
    for _ in range(10 * n):
        i, j = rng.below(len(edges)), rng.below(len(edges))
        flip = rng.next() & 1
        if i == j:
            continue
        (p, q), (r, s) = edges[i], edges[j]
        new = [(p, r), (q, s)] if flip == 0 else [(p, s), (q, r)]
        if any(u == v for u, v in new):
            continue
        new = [edge(*e) for e in new]
        if new[0] == new[1] or any(e in present for e in new):
            continue
        trial = [e for k, e in enumerate(edges) if k not in (i, j)] + new
        cand = Graph.from_edges(trial)
        if not is_connected(cand) or find_bridges(cand):
            continue
        edges = sorted(trial)
        present = set(edges)
    return Graph.from_edges(edges)


def corpus_manifest() -> list[tuple[str, Graph]]:
    out = [(f"K{n}", complete(n)) for n in range(3, 9)]
    out += [("theta(1,2,2)", theta(1, 2, 2)), ("theta(2,2,2)", theta(2, 2, 2))]
    out += [(f"prism({n})", prism(n)) for n in range(3, 7)]
    out += [("petersen", petersen()), ("flower_snark(5)", flower_snark(5)),
            ("flower_snark(7)", flower_snark(7))]
    out += [(f"random_cubic({n},{s})", random_cubic_bridgeless(n, s))
            for n in (8, 10, 12, 14, 16) for s in range(1, 21)]
    return out
