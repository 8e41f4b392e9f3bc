"""Brute-force cycle enumeration and CDC search for small graphs."""
from __future__ import annotations

import dataclasses

from . import kernels
from .graph import Graph, GraphError, is_valid_input
from .walks import Walk


class SizeError(GraphError):
    """Cycle enumeration exceeded its output cap."""


class ResourceError(GraphError):
    """The oracle's edge bound or search budget was exceeded."""


@dataclasses.dataclass(frozen=True)
class OracleLimits:
    max_edges: int = 20
    max_cycles: int = 200_000
    node_limit: int = 2_000_000


def enumerate_cycles(g: Graph, max_len: int | None = None, cap: int = 200_000) -> list[Walk]:
    """All simple cycles of length <= ``max_len``, canonical, sorted by
    (length, vertex sequence)."""
    if max_len is None:
        max_len = max(3, len(g.vertices))
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    index = {v: i for i, v in enumerate(g.vertices)}
    adj = [sorted(index[w] for w in g.adjacency[v]) for v in g.vertices]
    raw, overflow = kernels.enumerate_cycles_raw(adj, max_len, cap)
    if overflow:
        raise SizeError(f"more than {cap} cycles")
    verts = g.vertices
    out = [Walk(tuple(verts[i] for i in c) + (verts[c[0]],)) for c in raw]
    out.sort(key=lambda w: (len(w), w.vertices))
    return out


def brute_force_cdc(g: Graph, limits: OracleLimits = OracleLimits()) -> list[Walk] | None:
    """First CDC in canonical cycle order, or None when the search is exhausted."""
    verdict = is_valid_input(g)
    if not verdict.ok:
        raise GraphError(verdict.describe())
    if len(g.edges) > limits.max_edges:
        raise ResourceError(f"|E| = {len(g.edges)} exceeds oracle bound {limits.max_edges}")
    try:
        cycles = enumerate_cycles(g, cap=limits.max_cycles)
    except SizeError as exc:
        raise ResourceError(str(exc)) from exc
    eid = {e: i for i, e in enumerate(g.edges)}
    masks = []
    for c in cycles:
        m = 0
        for e in c.edges():
            m |= 1 << eid[e]
        masks.append(m)
    chosen, _nodes, hit = kernels.cdc_search(masks, len(g.edges), limits.node_limit)
    if hit:
        raise ResourceError(f"search exceeded {limits.node_limit} nodes")
    if chosen is None:
        return None
    return [cycles[i] for i in chosen]

