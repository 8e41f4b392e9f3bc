"""Staged decomposition of the projected Eulerian trail.

The projection ``E`` of the lifted Eulerian circuit double-covers every
edge.  It is split into pure cycles ``L``, maximal circuits ``R``,
double-cycles ``D`` and maximal segments ``S``; segments are then joined
into forks ``F``, each fork sheds one sheet of its doubly covered cycles
(``H1``) leaving a branch, and branches split into once-covered cycles
(``H2``) and branch-fork segments (``BF``).  Total coverage stays exactly
2 on every edge through all of it.
"""
from __future__ import annotations

import dataclasses
from collections import Counter, deque
from typing import Iterable, Sequence

from .audit import AuditLog, ConservationError, check_conservation
from .graph import Edge, Graph, edge, find_bridges, induced_subgraph, parity_partition
from .lift import (LiftedGraph, LiftedWalk, lift_one_sheet, lift_two_sheet, peel_lifted,
                   project, split_at_bridge)
from .walks import (KindError, Walk, classify_walk, coverage_of, decompose_even, euler_circuit,
                    is_branch_coverage, multiset_components, peel_sequence, vertex_passes,
                    walk_coverage)

STAGES = ("raw", "forked", "branched", "classed", "done")


# -- segment helpers -------------------------------------------------------

def seg_walk(path: Sequence[int]) -> Walk:
    """Out-and-back closed walk over a path, starting at the smaller end."""
    p = tuple(path)
    p = min(p, p[::-1])
    return Walk(p + p[-2::-1])


def seg_path(w: Walk) -> tuple[int, ...]:
    k = (len(w.vertices) + 1) // 2
    return w.vertices[:k]


def seg_ends(w: Walk) -> tuple[int, int]:
    p = seg_path(w)
    return p[0], p[-1]


def _cycle(seq: Sequence[int]) -> Walk:
    return Walk(tuple(seq)).canonical()


def path_decomposition(edges: Iterable[Edge]) -> list[tuple[int, ...]]:
    """Edge-disjoint simple paths covering ``edges``; each starts at the
    smallest remaining leaf and extends along the smallest unused edge."""
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    out = []
    while any(adj.values()):
        live = [v for v in sorted(adj) if adj[v]]
        leaves = [v for v in live if len(adj[v]) == 1]
        cur = leaves[0] if leaves else live[0]
        path = [cur]
        on_path = {cur}
        while True:
            nxt = [w for w in sorted(adj[cur]) if w not in on_path]
            if not nxt:
                break
            w = nxt[0]
            adj[cur].discard(w)
            adj[w].discard(cur)
            path.append(w)
            on_path.add(w)
            cur = w
        out.append(tuple(path))
    return out


# -- domain types ----------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Branch:
    walk: Walk
    once_edges: frozenset[Edge]
    twice_edges: frozenset[Edge]

    @classmethod
    def from_coverage(cls, cov: Counter) -> "Branch":
        return cls(
            euler_circuit(cov),
            frozenset(e for e, m in cov.items() if m == 1),
            frozenset(e for e, m in cov.items() if m == 2),
        )

    def coverage(self) -> Counter:
        return walk_coverage(self.walk)


@dataclasses.dataclass
class Decomposition:
    graph: Graph
    L: list[Walk] = dataclasses.field(default_factory=list)
    M: list[Walk] = dataclasses.field(default_factory=list)
    R: list[Walk] = dataclasses.field(default_factory=list)
    S_T: list[Walk] = dataclasses.field(default_factory=list)
    S_C: list[Walk] = dataclasses.field(default_factory=list)
    S: list[Walk] = dataclasses.field(default_factory=list)
    D_C: list[Walk] = dataclasses.field(default_factory=list)
    D_T: list[Walk] = dataclasses.field(default_factory=list)
    F: list[Walk] = dataclasses.field(default_factory=list)
    H1: list[Walk] = dataclasses.field(default_factory=list)
    H2: list[Walk] = dataclasses.field(default_factory=list)
    B: list[Branch] = dataclasses.field(default_factory=list)
    BF: list[Walk] = dataclasses.field(default_factory=list)
    stage: str = "raw"
    lifted_L: list[LiftedWalk] = dataclasses.field(default_factory=list)
    lifted_M: list[LiftedWalk] = dataclasses.field(default_factory=list)

    @property
    def D(self) -> list[Walk]:
        return self.D_C + self.D_T

    def r_cycles(self) -> list[Walk]:
        """Circuits of R broken into cycles."""
        out = []
        for r in self.R:
            out.extend(_cycle(c.vertices) for c in _peel_circuit(r))
        return out

    def coverage(self) -> Counter:
        cov = coverage_of(self.L) + coverage_of(self.R) + coverage_of(self.D, 2)
        if self.stage == "raw":
            cov += coverage_of(self.S)
        elif self.stage == "forked":
            cov += coverage_of(self.F)
        elif self.stage == "branched":
            cov += coverage_of(self.H1) + coverage_of(b.walk for b in self.B)
        else:
            cov += coverage_of(self.H1) + coverage_of(self.H2) + coverage_of(self.BF)
        return cov

    def cycle_pool(self) -> list[Walk]:
        """L, cycles of R, both sheets of D, H1 and H2 as one list."""
        return (list(self.L) + self.r_cycles() + [d for d in self.D for _ in range(2)]
                + list(self.H1) + list(self.H2))

    def stage_dump(self) -> dict:
        g = self.graph

        def walks(ws):
            return [{"walk": list(w.canonical().vertices) if w.closed and classify_walk(g, w) in
                     ("cycle", "double-cycle") else list(w.vertices),
                     "kind": classify_walk(g, w)} for w in ws]

        hist = Counter(self.coverage().values())
        return {
            "stage": self.stage,
            "L": walks(self.L), "R": walks(self.R), "D": walks(self.D),
            "S": walks(self.S), "F": walks(self.F), "H1": walks(self.H1),
            "B": walks(b.walk for b in self.B), "H2": walks(self.H2), "BF": walks(self.BF),
            "coverage_histogram": {str(k): v for k, v in sorted(hist.items())},
        }


def _peel_circuit(w: Walk) -> list[Walk]:
    pieces, _ = peel_sequence(w.vertices)
    return [Walk(tuple(p)) for p in pieces]


# -- lifted pieces ------------------------------------------------------------

def split_pure_cycles(lifted_cycles: Iterable[LiftedWalk]) -> tuple[list[LiftedWalk], list[LiftedWalk]]:
    pure, mixed = [], []
    for c in lifted_cycles:
        k = c.aux_count()
        if k % 2:
            raise ConservationError(f"lifted cycle with {k} auxiliary edges")
        (mixed if k else pure).append(c)
    return pure, mixed


def split_once_twice(m: Walk) -> tuple[list[Walk], list[Walk]]:
    """Once-covered edges of a closed walk as cycles, twice-covered edges as
    irreducible segments."""
    cov = walk_coverage(m)
    if any(c > 2 for c in cov.values()):
        raise ConservationError(f"edge passed more than twice by {m.vertices}")
    once = Counter({e: 1 for e, c in cov.items() if c == 1})
    q1 = [_cycle(c.vertices) for c in decompose_even(once)] if once else []
    q2 = [seg_walk(e) for e, c in sorted(cov.items()) if c == 2]
    return q1, q2


def merge_circuits(q1: Iterable[Walk]) -> tuple[list[Walk], list[Walk]]:
    """Join cycles sharing a vertex into maximal circuits; shared edges come
    off as segments."""
    elems = [frozenset(c.edges()) for c in q1]
    s_t: list[Walk] = []

    def verts(es):
        return {v for e in es for v in e}

    while True:
        elems.sort(key=lambda es: tuple(sorted(es)))
        pair = None
        for i in range(len(elems)):
            vi = verts(elems[i])
            for j in range(i + 1, len(elems)):
                if vi & verts(elems[j]):
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break
        a, b = elems[pair[0]], elems[pair[1]]
        shared = a & b
        s_t.extend(seg_walk(p) for p in path_decomposition(sorted(shared)))
        rest = Counter({e: 1 for e in a ^ b})
        del elems[pair[1]], elems[pair[0]]
        elems.extend(frozenset(c) for c in multiset_components(rest))
    r = [euler_circuit(Counter({e: 1 for e in es})) for es in elems]
    return r, sorted(s_t)


def _join_two(p: tuple[int, ...], q: tuple[int, ...], v: int) -> tuple[list[tuple[int, ...]], list[Walk]]:
    """Chain two edge-disjoint paths at common end ``v``; loops formed come off
    as double-cycles."""
    if p[-1] != v:
        p = p[::-1]
    if q[0] != v:
        q = q[::-1]
    pieces, residue = peel_sequence(list(p) + list(q[1:]))
    paths = [tuple(residue)] if len(residue) >= 2 else []
    return paths, [_cycle(c) for c in pieces]


def merge_segment_pool(segments: Iterable[Walk]) -> tuple[list[Walk], list[Walk]]:
    paths = [seg_path(s) for s in segments]
    doubles: list[Walk] = []
    while True:
        paths = sorted(min(p, p[::-1]) for p in paths)
        pair = None
        for i in range(len(paths)):
            ei = {paths[i][0], paths[i][-1]}
            for j in range(i + 1, len(paths)):
                common = ei & {paths[j][0], paths[j][-1]}
                if common:
                    pair = (i, j, min(common))
                    break
            if pair:
                break
        if pair is None:
            break
        i, j, v = pair
        new_paths, new_doubles = _join_two(paths[i], paths[j], v)
        del paths[j], paths[i]
        paths.extend(new_paths)
        doubles.extend(new_doubles)
    return [seg_walk(p) for p in paths], doubles


def merge_segments(per_walk: Sequence[Sequence[Walk]], pool: Sequence[Walk] = ()
                   ) -> tuple[list[Walk], list[Walk], list[Walk], list[Walk]]:
    """Returns (S, S_C, D_C, D_T)."""
    chained: list[Walk] = []
    d_c: list[Walk] = []
    for group in per_walk:
        s_i, d_i = merge_segment_pool(group)
        chained.extend(s_i)
        d_c.extend(d_i)
    s_c, d_more = merge_segment_pool(chained)
    d_c.extend(d_more)
    s, d_t = merge_segment_pool(list(s_c) + list(pool))
    return s, s_c, d_c, d_t


def check_segment_endings(segments: Iterable[Walk], g: Graph) -> list[tuple[tuple[int, ...], int]]:
    """Violations of the odd-ending rule as (segment path, even ending)."""
    odd, _ = parity_partition(g)
    bad = []
    for s in segments:
        for v in seg_ends(s):
            if v not in odd:
                bad.append((seg_path(s), v))
    return bad


# -- forks --------------------------------------------------------------------

def _roles(w: Walk) -> tuple[set[int], set[int]]:
    passes = vertex_passes(w)
    ending = {v for v, c in passes.items() if c == 1}
    return ending, set(passes) - ending


def _splice(host: Walk, guest: Walk, v: int) -> Walk:
    """Insert ``guest``'s closed traversal into ``host`` at the first visit of v."""
    gv = list(guest.vertices[:-1])
    i = gv.index(v)
    rot = gv[i:] + gv[:i] + [v]
    hv = list(host.vertices)
    k = hv.index(v)
    return Walk(tuple(hv[:k] + rot + hv[k + 1:]))


def build_forks(segments: Iterable[Walk]) -> list[Walk]:
    forks = list(segments)
    while True:
        forks.sort(key=lambda f: (tuple(sorted(walk_coverage(f))), f.vertices))
        found = None
        for i, fi in enumerate(forks):
            ends_i, _ = _roles(fi)
            for j, fj in enumerate(forks):
                if i == j:
                    continue
                _, inner_j = _roles(fj)
                common = ends_i & inner_j
                if common:
                    found = (i, j, min(common))
                    break
            if found:
                break
        if found is None:
            return forks
        i, j, v = found
        merged = _splice(forks[j], forks[i], v)
        forks = [f for k, f in enumerate(forks) if k not in (i, j)] + [merged]


def bifurcation_degrees(g: Graph, f: Walk) -> dict[int, int]:
    passes = vertex_passes(f)
    sub = induced_subgraph(g, walk_coverage(f))
    return {v: sub.degree(v) for v, c in passes.items() if c > 2}


# -- branches -----------------------------------------------------------------

def _bfs_path(adj: dict[int, list[int]], src: int, dst: int, banned: Edge) -> list[int] | None:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            path = [u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for w in adj.get(u, ()):
            if w not in prev and edge(u, w) != banned:
                prev[w] = u
                queue.append(w)
    return None


def _adjacency(es: Iterable[Edge]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in sorted(es):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for lst in adj.values():
        lst.sort()
    return adj


def _simple_paths(adj: dict[int, list[int]], src: int, dst: int, banned: Edge, limit: int):
    """Simple src-dst paths avoiding one edge, DFS order, at most ``limit``."""
    found = 0
    stack = [(src, [src])]
    while stack and found < limit:
        u, path = stack.pop()
        if u == dst:
            found += 1
            yield path
            continue
        for w in reversed(adj.get(u, ())):
            if w not in path and edge(u, w) != banned:
                stack.append((w, path + [w]))


def _connected_choice(res: Counter, e: Edge, limit: int = 200) -> list[int]:
    """A cycle through ``e`` whose removal keeps the residue connected, if any."""
    support = [x for x, m in res.items() if m]
    adj = _adjacency(support)
    cands = sorted(_simple_paths(adj, e[0], e[1], e, limit), key=lambda p: (len(p), p))
    for path in cands:
        trial = res.copy()
        for i in range(len(path)):
            trial[edge(path[i], path[(i + 1) % len(path)])] -= 1
        if len(multiset_components(+trial)) == 1:
            return path
    return cands[0]


def extract_fork_cycles(g: Graph, f: Walk) -> tuple[list[Walk], list[Branch]]:
    """Take one sheet off doubly covered cycles of a fork until every
    twice-covered edge left is a cut edge of what remains."""
    kind = classify_walk(g, f)
    if kind not in ("fork", "segment"):
        raise KindError(f"extract_fork_cycles needs a fork, got {kind}")
    res = walk_coverage(f)
    h1: list[Walk] = []
    while True:
        support = [e for e, m in res.items() if m]
        cut = find_bridges(Graph.from_edges(support))
        loose = sorted(e for e in support if res[e] == 2 and e not in cut)
        if not loose:
            break
        e = loose[0]
        twice = [x for x in support if res[x] == 2]
        path = _bfs_path(_adjacency(twice), e[0], e[1], e)
        if path is None:
            path = _connected_choice(res, e)
        cyc = Walk(tuple(path) + (path[0],))
        for x in cyc.edges():
            res[x] -= 1
        h1.append(_cycle(cyc.vertices))
    res = +res
    branches = [Branch.from_coverage(c) for c in multiset_components(res)]
    return h1, branches


# -- branch split -------------------------------------------------------------

def branch_split(b: Branch) -> tuple[list[Walk], list[Walk]]:
    """(H2 part, BF part): once-covered cycles and twice-covered paths."""
    h2 = [_cycle(c.vertices) for c in decompose_even(Counter({e: 1 for e in b.once_edges}))] \
        if b.once_edges else []
    bf = [seg_walk(p) for p in path_decomposition(sorted(b.twice_edges))]
    return h2, bf


# -- driver -----------------------------------------------------------------------

def all_even_cycles(lg: LiftedGraph, trail: LiftedWalk) -> list[Walk]:
    """Eulerian base: both sheet circuits peel straight into a double cover."""
    out = []
    for half in split_at_bridge(lg, trail):
        for c in peel_lifted(half):
            out.append(_cycle(project(lg, c).vertices))
    return out


def decompose(lg: LiftedGraph, trail: LiftedWalk, audit: AuditLog | None = None) -> Decomposition:
    """Steps 2-4 on a closed Eulerian circuit of the lift; stage 'branched'."""
    g = lg.base
    dec = Decomposition(g)
    lifted = peel_lifted(trail)
    if audit is not None:
        for c in lifted:
            audit.check("even_aux_count", c.aux_count() % 2 == 0, [list(x) for x in c.vertices])
    pure, mixed = split_pure_cycles(lifted)
    dec.lifted_L, dec.lifted_M = pure, mixed
    dec.L = [_cycle(project(lg, c).vertices) for c in pure]
    dec.M = [project(lg, c) for c in mixed]
    raw = coverage_of(dec.L) + coverage_of(dec.M)
    check_conservation(g, raw, "projected", audit)

    q1: list[Walk] = []
    q2_groups: list[list[Walk]] = []
    for m in dec.M:
        a, b = split_once_twice(m)
        q1.extend(a)
        q2_groups.append(b)
    dec.R, dec.S_T = merge_circuits(q1)
    dec.S, dec.S_C, dec.D_C, dec.D_T = merge_segments(q2_groups, dec.S_T)
    dec.stage = "raw"
    check_conservation(g, dec.coverage(), "raw", audit)
    if audit is not None:
        bad = check_segment_endings(dec.S, g)
        audit.check("segment_ends_odd", not bad, [[list(p), v] for p, v in bad])
        _audit_lifts(lg, dec, audit)
        _audit_kinds(g, dec, audit)

    dec.F = build_forks(dec.S)
    dec.stage = "forked"
    check_conservation(g, dec.coverage(), "forked", audit)
    if audit is not None:
        for f in dec.F:
            degs = bifurcation_degrees(g, f)
            audit.check("bifurcation_degree_3", all(d == 3 for d in degs.values()),
                        {"fork": list(f.vertices), "degrees": degs})

    for f in dec.F:
        h, bs = extract_fork_cycles(g, f)
        dec.H1.extend(h)
        dec.B.extend(bs)
        if audit is not None:
            audit.check("single_branch_per_fork", len(bs) == 1,
                        {"fork": list(f.vertices), "branches": len(bs)})
    dec.stage = "branched"
    check_conservation(g, dec.coverage(), "branched", audit)
    if audit is not None:
        for b in dec.B:
            audit.check("branch_cut_edges", is_branch_coverage(g, b.coverage()),
                        list(b.walk.vertices))
    return dec


def _audit_kinds(g: Graph, dec: Decomposition, audit: AuditLog) -> None:
    for name, ws, kinds in (("L", dec.L, ("cycle",)), ("R", dec.R, ("cycle", "circuit")),
                            ("D", dec.D, ("cycle",)), ("S", dec.S, ("segment",))):
        for w in ws:
            audit.check("kind_" + name, classify_walk(g, w) in kinds, list(w.vertices))


def _audit_lifts(lg: LiftedGraph, dec: Decomposition, audit: AuditLog) -> None:
    """Each produced element lifts into the lift graph and projects back."""
    def valid(lw: LiftedWalk) -> bool:
        return all(lg.has_edge(a, b) for a, b in zip(lw.vertices, lw.vertices[1:]))

    for w, lw in zip(dec.L, dec.lifted_L):
        audit.check("lift_consistency_L", project(lg, lw).canonical() == w.canonical(), list(w.vertices))
    for name, ws in (("R", dec.R), ("D", dec.D)):
        for w in ws:
            lw = lift_one_sheet(w)
            audit.check("lift_consistency_" + name, valid(lw) and project(lg, lw) == w, list(w.vertices))
    for s in dec.S:
        lw = lift_two_sheet(seg_path(s))
        audit.check("lift_consistency_S", valid(lw) and walk_coverage(project(lg, lw)) == walk_coverage(s),
                    list(s.vertices))
