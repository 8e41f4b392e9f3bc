"""Connected classes, path surgery, and the branch-fork elimination loop.

After decomposition the double cover consists of a pool of cycles (each
covering its edges once) plus branch-fork segments ``BF`` (paths covered
twice by themselves).  Each elimination takes a segment with path ``P``
from ``alpha`` to ``beta``, builds two further alpha-beta paths ``p3`` and
``p4`` out of other elements, and replaces everything involved by the
cycles of ``P + p3`` and ``P + p4`` plus whatever surgery left over.
"""
from __future__ import annotations

import dataclasses
from collections import Counter, deque
from typing import Iterable, Sequence

from .audit import AuditLog, ConservationError, check_conservation
from .decompose import (Decomposition, _cycle, all_even_cycles, branch_split, decompose,
                        path_decomposition, seg_path)
from .graph import Edge, Graph, GraphError, edge
from .lift import build_lift, eulerian_trail
from .verify import verify_cdc
from .walks import Walk, coverage_of, cycle_arcs, decompose_even, peel_sequence

Path = tuple[int, ...]


class SiteError(GraphError):
    """Surgery inputs do not form a valid site (disjoint, no private arc, ...)."""


class ArgumentError(GraphError):
    """Surgery endpoints are misplaced."""


class BridgeError(GraphError):
    """No alternative alpha-beta path exists; contradicts bridgelessness."""


def _path_edges(p: Sequence[int]) -> Counter:
    return Counter(edge(p[i], p[i + 1]) for i in range(len(p) - 1))


# -- connected classes -------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class ConnectedClass:
    cycles: tuple[Walk, ...]
    subgraph: Graph


def connected_classes(pool: Iterable[Walk]) -> list[ConnectedClass]:
    """Group cycles whose vertex sets chain together."""
    pool = list(pool)
    parent = list(range(len(pool)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i, c in enumerate(pool):
        for v in c.vertices:
            if v in owner:
                parent[find(i)] = find(owner[v])
            else:
                owner[v] = i
    groups: dict[int, list[Walk]] = {}
    for i, c in enumerate(pool):
        groups.setdefault(find(i), []).append(c)
    out = []
    for members in groups.values():
        members.sort()
        sub = Graph.from_edges(sorted(set(coverage_of(members))))
        out.append(ConnectedClass(tuple(members), sub))
    out.sort(key=lambda k: k.cycles[0])
    return out


# -- surgery -------------------------------------------------------------------

def _check_law(inputs: Counter, outputs: Counter, audit: AuditLog | None, name: str) -> None:
    ok = +inputs == +outputs
    if audit is not None:
        audit.check(name, ok)
    if not ok:
        raise ConservationError(f"{name}: surgery changed the edge multiset")


def merge_cycles(r1: Walk, r2: Walk, a: int, b: int, audit: AuditLog | None = None
                 ) -> tuple[Path, Path, Walk | None]:
    """Two a-b paths plus an optional cycle whose union is ``r1 + r2``.

    ``a`` must be private to ``r1``; ``b`` may be anywhere on ``r2``.
    """
    if r1.canonical() == r2.canonical():
        raise SiteError("cycles are equal")
    body1, body2 = list(r1.vertices[:-1]), list(r2.vertices[:-1])
    shared = set(body1) & set(body2)
    if not shared:
        raise SiteError("cycles share no vertex")
    if a not in body1 or a in shared:
        raise ArgumentError(f"a={a} must be a private vertex of r1")
    if b not in body2 or b == a:
        raise ArgumentError(f"b={b} must lie on r2")
    n = len(body1)
    i = body1.index(a)
    fwd, back = [a], [a]
    while fwd[-1] not in shared:
        fwd.append(body1[(i + len(fwd)) % n])
    while back[-1] not in shared:
        back.append(body1[(i - len(back)) % n])
    v1, v2 = back[-1], fwd[-1]
    p1_to_a = fwd[::-1]  # v2 .. a
    delta = None
    if v1 == v2:
        v = v1
        if b == v:
            l1, l2 = tuple(back), tuple(fwd)
            delta = _cycle(r2.vertices)
        else:
            x, y = cycle_arcs(r2.vertices, v, b)
            l1, l2 = tuple(back + x[1:]), tuple(fwd + y[1:])
    else:
        arcs1 = cycle_arcs(r1.vertices, v1, v2)
        q1 = arcs1[0] if a not in arcs1[0] else arcs1[1]
        r1_edges = set(r1.edges())
        set1 = set(body1)

        def private(arc):
            if len(arc) == 2:
                return edge(*arc) not in r1_edges
            return not set1 & set(arc[1:-1])

        arcs2 = [arc for arc in cycle_arcs(r2.vertices, v1, v2)]
        cands = [arc for arc in arcs2 if private(arc)]
        if not cands:
            raise SiteError("r2 has no private arc between the separating vertices")
        with_b = [arc for arc in cands if b in arc[1:-1]]
        p2 = with_b[0] if with_b else cands[0]
        q2 = arcs2[1] if p2 is arcs2[0] else arcs2[0]
        if b in p2[1:-1]:
            k = p2.index(b)
            l1 = tuple(back + q1[1:] + p2[k:][::-1][1:])
            l2 = tuple(p2[:k + 1][::-1] + q2[1:] + p1_to_a[1:])
        else:
            k = q2.index(b)
            l1 = tuple(back + q2[1:k + 1])
            l2 = tuple(q2[k:] + p1_to_a[1:])
            delta = _cycle(tuple(q1) + tuple(p2[::-1][1:]))
    l1, l2 = (p if p[0] == a else p[::-1] for p in (l1, l2))
    out = _path_edges(l1) + _path_edges(l2) + (coverage_of([delta]) if delta else Counter())
    _check_law(coverage_of([r1, r2]), out, audit, "merge_cycles_multiset_law")
    return l1, l2, delta


def merge_segment_cycle(s: Sequence[int], r: Walk, v: int, a: int, b: int,
                        audit: AuditLog | None = None) -> tuple[Path, Path]:
    """Segment path ``s`` (from ``a`` to ``v``) hooked onto cycle ``r`` at
    ``v``; returns the two a-b paths through either arc of ``r``."""
    s = list(s)
    if s[-1] != v:
        s = s[::-1]
    if s[-1] != v or s[0] != a:
        raise ArgumentError("segment must run from a to v")
    body = set(r.vertices[:-1])
    if set(s) & body != {v}:
        raise SiteError("segment and cycle must meet exactly at v")
    if b == v or b not in body:
        raise ArgumentError(f"b={b} must be a vertex of r other than v")
    x, y = cycle_arcs(r.vertices, v, b)
    l1, l2 = tuple(s + x[1:]), tuple(s + y[1:])
    _check_law(coverage_of([r]) + _path_edges(s) + _path_edges(s),
               _path_edges(l1) + _path_edges(l2), audit, "segment_cycle_multiset_law")
    return l1, l2


# -- generic search fallback -------------------------------------------------

def _adj(cov: Counter) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for (u, v), m in sorted(cov.items()):
        if m > 0:
            out.setdefault(u, []).append(v)
            out.setdefault(v, []).append(u)
    return out


def simple_paths(cov: Counter, src: int, dst: int, limit: int = 64, budget: int = 20000
                 ) -> list[Path]:
    """Up to ``limit`` simple src-dst paths in the support, shortest first."""
    adj = _adj(cov)
    if src not in adj or dst not in adj:
        return []
    found: list[Path] = []
    steps = 0
    stack = [(src, (src,))]
    while stack and steps < budget:
        steps += 1
        u, path = stack.pop()
        if u == dst:
            found.append(path)
            continue
        for w in reversed(adj[u]):
            if w not in path:
                stack.append((w, path + (w,)))
    found.sort(key=lambda p: (len(p), p))
    return found[:limit]


def cycle_split(rest: Counter, budget: list[int]) -> list[Walk] | None:
    """Decompose an even multiset (multiplicities <= 2) into simple cycles."""
    rest = +rest
    if not rest:
        return []
    if all(m == 1 for m in rest.values()):
        try:
            return [_cycle(c.vertices) for c in decompose_even(rest)]
        except GraphError:
            return None
    if max(rest.values()) > 2:
        return None
    e = min(x for x, m in rest.items() if m == 2)
    for path in simple_paths(rest - Counter({e: rest[e]}), e[1], e[0], limit=16, budget=2000):
        budget[0] -= 1
        if budget[0] <= 0:
            return None
        if len(path) < 3:
            continue
        cyc = Walk(path + (path[0],))
        sub = cycle_split(rest - coverage_of([cyc]), budget)
        if sub is not None:
            return [_cycle(cyc.vertices)] + sub
    return None


def two_path_split(pool: Counter, alpha: int, beta: int, budget: int = 4000
                   ) -> tuple[Path, Path, list[Walk]] | None:
    """Search for alpha-beta paths l1, l2 inside ``pool`` whose remainder
    splits into simple cycles."""
    left = [budget]
    for l1 in simple_paths(pool, alpha, beta):
        rest1 = pool - _path_edges(l1)
        for l2 in simple_paths(rest1, alpha, beta, limit=32):
            left[0] -= 1
            if left[0] <= 0:
                return None
            cycles = cycle_split(rest1 - _path_edges(l2), left)
            if cycles is not None:
                return l1, l2, cycles
    return None


# -- elimination ---------------------------------------------------------------

@dataclasses.dataclass
class ReductionState:
    graph: Graph
    cycles: list[Walk]
    segments: list[Path]  # BF as paths

    def coverage(self) -> Counter:
        cov = coverage_of(self.cycles)
        for p in self.segments:
            cov += _path_edges(p) + _path_edges(p)
        return cov

    def to_json(self) -> dict:
        return {"cycles": [list(c.canonical().vertices) for c in sorted(self.cycles)],
                "BF": [list(p) for p in self.segments]}


def _canon_path(p: Sequence[int]) -> Path:
    p = tuple(p)
    return min(p, p[::-1])


def classify_bf_segment(s: Sequence[int], bf: Iterable[Sequence[int]]) -> str:
    """'A' unless an ending vertex of ``s`` is an inner vertex of another segment."""
    s = tuple(s)
    ends = {s[0], s[-1]}
    seen_self = False
    for t in bf:
        t = tuple(t)
        if _canon_path(t) == _canon_path(s) and not seen_self:
            seen_self = True
            continue
        if ends & set(t[1:-1]):
            return "B"
    return "A"


@dataclasses.dataclass
class Surgery:
    p3: Path
    p4: Path
    consumed_cycles: list[int]
    consumed_segments: list[int]
    emitted: list[Walk]
    leftover_segments: list[Path]
    method: str


def _element_graph(state: ReductionState, skip: int):
    """Elements other than segment ``skip`` as ('c', i)/('s', j) nodes with
    their vertex sets."""
    nodes = [("c", i) for i in range(len(state.cycles))]
    nodes += [("s", j) for j in range(len(state.segments)) if j != skip]
    verts = {}
    for kind, i in nodes:
        verts[(kind, i)] = set(state.cycles[i].vertices) if kind == "c" else set(state.segments[i])
    return nodes, verts


def _element_chains(state: ReductionState, skip: int, alpha: int, beta: int, limit: int = 24):
    """Shortest element chains from an alpha host to a beta host, BFS order."""
    nodes, verts = _element_graph(state, skip)
    by_vertex: dict[int, list] = {}
    for n in nodes:
        for v in verts[n]:
            by_vertex.setdefault(v, []).append(n)
    chains = []
    for start in by_vertex.get(alpha, []):
        prev = {start: None}
        q = deque([start])
        while q:
            n = q.popleft()
            if beta in verts[n]:
                chain = []
                while n is not None:
                    chain.append(n)
                    n = prev[n]
                chains.append(chain[::-1])
                continue
            for v in sorted(verts[n]):
                for m in by_vertex[v]:
                    if m not in prev:
                        prev[m] = n
                        q.append(m)
    uniq = []
    for c in sorted(chains, key=lambda c: (len(c), c)):
        if c not in uniq:
            uniq.append(c)
    return uniq[:limit]


def _union(state: ReductionState, chain) -> Counter:
    cov: Counter = Counter()
    for kind, i in chain:
        if kind == "c":
            cov += coverage_of([state.cycles[i]])
        else:
            cov += _path_edges(state.segments[i]) + _path_edges(state.segments[i])
    return cov


def _surgery_for_chain(state: ReductionState, chain, alpha: int, beta: int,
                       audit: AuditLog | None) -> Surgery | None:
    cyc_ids = [i for k, i in chain if k == "c"]
    seg_ids = [i for k, i in chain if k == "s"]
    if len(chain) == 1 and cyc_ids:
        r = state.cycles[cyc_ids[0]]
        x, y = cycle_arcs(r.vertices, alpha, beta)
        return Surgery(tuple(x), tuple(y), cyc_ids, [], [], [], "arcs")
    if len(chain) == 2 and len(cyc_ids) == 2:
        r1, r2 = state.cycles[cyc_ids[0]], state.cycles[cyc_ids[1]]
        if alpha not in r2.vertices:
            try:
                l1, l2, delta = merge_cycles(r1, r2, alpha, beta, audit)
                return Surgery(l1, l2, cyc_ids, [], [delta] if delta else [], [], "merge_cycles")
            except (SiteError, ArgumentError):
                pass
    if len(chain) == 2 and len(cyc_ids) == 1:
        s = state.segments[seg_ids[0]]
        r = state.cycles[cyc_ids[0]]
        ends = {s[0], s[-1]}
        for a, b in ((alpha, beta), (beta, alpha)):
            if a in ends and b in r.vertices:
                v = s[-1] if s[0] == a else s[0]
                try:
                    l1, l2 = merge_segment_cycle(s, r, v, a, b, audit)
                except (SiteError, ArgumentError):
                    continue
                if a == beta:
                    l1, l2 = l1[::-1], l2[::-1]
                return Surgery(l1, l2, cyc_ids, seg_ids, [], [], "merge_segment_cycle")
    union = _union(state, chain)
    found = two_path_split(union, alpha, beta)
    if found is None:
        return None
    l1, l2, cycles = found
    return Surgery(l1, l2, cyc_ids, seg_ids, cycles, [], "search")


def _class_surgery(state: ReductionState, skip: int, alpha: int, beta: int,
                   audit: AuditLog | None) -> Surgery | None:
    """Last resort: the whole connected structure around alpha and beta,
    allowing twice-covered leftovers to stay behind as segments."""
    nodes, verts = _element_graph(state, skip)
    chain = list(nodes)
    union = _union(state, chain)
    for l1 in simple_paths(union, alpha, beta, limit=32, budget=5000):
        rest1 = union - _path_edges(l1)
        for l2 in simple_paths(rest1, alpha, beta, limit=16, budget=5000):
            rest = rest1 - _path_edges(l2)
            once = Counter({e: 1 for e, m in rest.items() if m % 2})
            twice = sorted(e for e, m in rest.items() if m >= 2)
            if any(m > 2 for m in rest.values()):
                continue
            try:
                cycles = [_cycle(c.vertices) for c in decompose_even(once)] if once else []
            except GraphError:
                continue
            if _is_forest(twice):
                segs = path_decomposition(twice) if twice else []
                seg_ids = [i for k, i in chain if k == "s"]
                if len(segs) < len(seg_ids) + 1:
                    return Surgery(l1, l2, [i for k, i in chain if k == "c"], seg_ids,
                                   cycles, [tuple(p) for p in segs], "class_search")
    return None


def _is_forest(edges: Sequence[Edge]) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def alternative_paths(state: ReductionState, index: int, audit: AuditLog | None = None,
                      wide: bool = True) -> Surgery:
    """p3, p4 from alpha to beta avoiding segment ``index``'s path.

    Element chains are tried first; ``wide`` enables the search over every
    element at once."""
    path = state.segments[index]
    alpha, beta = path[0], path[-1]
    chains = _element_chains(state, index, alpha, beta)
    if not chains:
        raise BridgeError(f"no element chain joins {alpha} and {beta}")
    for chain in chains:
        surg = _surgery_for_chain(state, chain, alpha, beta, audit)
        if surg is not None and _valid_surgery(state, surg, path, audit):
            return surg
    surg = _class_surgery(state, index, alpha, beta, audit) if wide else None
    if surg is not None and _valid_surgery(state, surg, path, audit):
        return surg
    raise BridgeError(f"no surgery found for segment {list(path)}")


def _valid_surgery(state: ReductionState, s: Surgery, path: Path, audit: AuditLog | None) -> bool:
    alpha, beta = path[0], path[-1]
    seg_edges = set(_path_edges(path))
    avoid = not (set(_path_edges(s.p3)) | set(_path_edges(s.p4))) & seg_edges
    simple = all(len(set(p)) == len(p) for p in (s.p3, s.p4))
    ends = all(p[0] == alpha and p[-1] == beta for p in (s.p3, s.p4))
    consumed = coverage_of(state.cycles[i] for i in s.consumed_cycles)
    for j in s.consumed_segments:
        consumed += _path_edges(state.segments[j]) + _path_edges(state.segments[j])
    out = _path_edges(s.p3) + _path_edges(s.p4) + coverage_of(s.emitted)
    for p in s.leftover_segments:
        out += _path_edges(p) + _path_edges(p)
    law = +consumed == +out
    if audit is not None:
        audit.check("alt_paths_avoid_segment", avoid)
        audit.check("surgery_multiset_law", law)
    return avoid and simple and ends and law


class ProgressError(GraphError):
    pass


def eliminate(state: ReductionState, index: int, audit: AuditLog | None = None,
              wide: bool = True) -> ReductionState:
    """Replace segment ``index`` and the elements used for p3/p4 by the
    cycles of P + p3 and P + p4."""
    path = state.segments[index]
    surg = alternative_paths(state, index, audit, wide)
    new_cycles = list(surg.emitted)
    for p in (surg.p3, surg.p4):
        circuit = tuple(path) + tuple(p[::-1][1:])
        pieces, _ = peel_sequence(circuit)
        new_cycles.extend(_cycle(c) for c in pieces)
    gone_c = set(surg.consumed_cycles)
    gone_s = set(surg.consumed_segments) | {index}
    cycles = [c for i, c in enumerate(state.cycles) if i not in gone_c] + new_cycles
    segments = [p for j, p in enumerate(state.segments) if j not in gone_s] + \
        [_canon_path(p) for p in surg.leftover_segments]
    out = ReductionState(state.graph, sorted(cycles), sorted(segments))
    check_conservation(state.graph, out.coverage(), "eliminate", audit)
    if audit is not None:
        audit.check("bf_strictly_decreases", len(out.segments) < len(state.segments),
                    {"before": len(state.segments), "after": len(out.segments)})
    if len(out.segments) >= len(state.segments):
        raise ProgressError(f"|BF| went {len(state.segments)} -> {len(out.segments)}")
    if audit is not None:
        audit.check("surgery_method_" + surg.method, True)
    return out


# -- outcome -------------------------------------------------------------------

@dataclasses.dataclass
class CdcOutcome:
    status: str  # "success" | "non_termination"
    cycles: list[Walk]
    iterations: int
    report: dict

    @property
    def ok(self) -> bool:
        return self.status == "success"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "cycles": [list(c.canonical().vertices) for c in sorted(c.canonical() for c in self.cycles)],
            "iterations": self.iterations,
            "report": self.report,
        }


def state_from(dec: Decomposition) -> ReductionState:
    """Split branches (if not yet done) and collect the pool and BF."""
    if dec.stage == "branched":
        for b in dec.B:
            h2, bf = branch_split(b)
            dec.H2.extend(h2)
            dec.BF.extend(bf)
        dec.stage = "classed"
    segs = sorted(_canon_path(seg_path(s)) for s in dec.BF)
    return ReductionState(dec.graph, sorted(dec.cycle_pool()), segs)


def reduce_state(state: ReductionState, max_iterations: int, audit: AuditLog | None = None,
                 trace: list | None = None) -> tuple[ReductionState, int, str | None]:
    """Eliminate type-A segments until BF is empty.  Returns the final
    state, the iteration count and a failure reason (None on success)."""
    it = 0
    while state.segments:
        if it >= max_iterations:
            return state, it, "iteration_cap"
        order = [j for j in range(len(state.segments))
                 if classify_bf_segment(state.segments[j], state.segments) == "A"]
        if not order:
            return state, it, "no_type_a_segment"
        last_err: Exception | None = None
        for wide, j in [(False, j) for j in order] + [(True, j) for j in order]:
            try:
                nxt = eliminate(state, j, audit, wide)
            except (BridgeError, ProgressError) as exc:
                last_err = exc
                continue
            if trace is not None:
                trace.append({"iteration": it, "segment": list(state.segments[j]),
                              "bf_after": len(nxt.segments),
                              "classes": len(connected_classes(nxt.cycles))})
            state = nxt
            break
        else:
            return state, it, f"{type(last_err).__name__}: {last_err}"
        it += 1
    return state, it, None


def run_reduction(dec: Decomposition, max_iterations: int | None = None,
                  audit: AuditLog | None = None, trace: list | None = None) -> CdcOutcome:
    g = dec.graph
    audit = audit if audit is not None else AuditLog()
    cap = max_iterations if max_iterations is not None else 4 * len(g.edges)
    state = state_from(dec)
    check_conservation(g, state.coverage(), "classed", audit)
    state, it, reason = reduce_state(state, cap, audit, trace)
    report = {"audit": audit.to_json(), "stage_counts": _counts(dec)}
    if reason is not None:
        report["reason"] = reason
        report["snapshot"] = {"decomposition": dec.stage_dump(), "state": state.to_json()}
        return CdcOutcome("non_termination", state.cycles, it, report)
    vr = verify_cdc(g, state.cycles)
    report["verified"] = vr.ok
    if not vr.ok:
        report["verify"] = vr.to_json()
    return CdcOutcome("success", [c.canonical() for c in state.cycles], it, report)


def _counts(dec: Decomposition) -> dict:
    return {k: len(getattr(dec, k)) for k in ("L", "R", "S", "D", "F", "H1", "B", "H2", "BF")}


def run_pipeline(g: Graph, max_iterations: int | None = None, trace: list | None = None
                 ) -> CdcOutcome:
    """Validate, lift, trace, decompose and reduce.  Raises InputError on
    invalid graphs; every other outcome is a value."""
    lg = build_lift(g)
    trail = eulerian_trail(lg)
    audit = AuditLog()
    if lg.all_even:
        cycles = all_even_cycles(lg, trail)
        check_conservation(g, coverage_of(cycles), "all_even", audit)
        vr = verify_cdc(g, cycles)
        report = {"audit": audit.to_json(), "shortcut": "all_even", "verified": vr.ok}
        return CdcOutcome("success", [c.canonical() for c in cycles], 0, report)
    dec = decompose(lg, trail, audit)
    return run_reduction(dec, max_iterations, audit, trace)
