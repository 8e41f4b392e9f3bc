"""Pure-Python oracle kernels; the compiled module mirrors these exactly."""
from __future__ import annotations

NAME = "python"


def enumerate_cycles_raw(adj: list[list[int]], max_len: int, cap: int):
    """Simple cycles on vertices ``0..n-1`` with ``adj`` sorted.

    Each cycle starts at its smallest vertex and has second vertex smaller
    than its last, so every cycle appears once.  Returns ``(cycles,
    overflow)``; cycles are vertex tuples without the closing repeat.
    """
    out = []
    n = len(adj)
    for s in range(n):
        path = [s]
        on = [False] * n
        on[s] = True
        iters = [0]
        while path:
            u = path[-1]
            i = iters[-1]
            nbrs = adj[u]
            if i == len(nbrs):
                on[u] = False
                path.pop()
                iters.pop()
                continue
            iters[-1] = i + 1
            w = nbrs[i]
            if w == s and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
                if len(out) > cap:
                    return out, True
                continue
            if w > s and not on[w] and len(path) < max_len:
                on[w] = True
                path.append(w)
                iters.append(0)
        on[s] = False
    return out, False


def cdc_search(masks: list[int], n_edges: int, node_limit: int):
    """Depth-first search for a multiset of masks summing to 2 on every bit.

    Branches on the lowest bit not yet covered twice, trying masks in list
    order; failed (once, twice) states are memoised.  Returns ``(chosen
    indices or None, nodes, hit_limit)``.
    """
    full = (1 << n_edges) - 1
    by_edge = [[i for i, m in enumerate(masks) if (m >> e) & 1] for e in range(n_edges)]
    failed = set()
    stack = [(0, 0, -1, 0)]  # once, twice, edge, next candidate position
    chosen: list[int] = []
    nodes = 0
    while stack:
        once, twice, e, pos = stack[-1]
        if twice == full:
            return chosen, nodes, False
        if e < 0:
            if (once, twice) in failed:
                stack.pop()
                if chosen:
                    chosen.pop()
                continue
            nodes += 1
            if nodes > node_limit:
                return None, nodes, True
            free = full & ~twice
            e = (free & -free).bit_length() - 1
        cands = by_edge[e]
        while pos < len(cands) and masks[cands[pos]] & twice:
            pos += 1
        if pos == len(cands):
            failed.add((once, twice))
            stack.pop()
            if chosen:
                chosen.pop()
            continue
        stack[-1] = (once, twice, e, pos + 1)
        m = masks[cands[pos]]
        chosen.append(cands[pos])
        stack.append((once ^ m, twice | (once & m), -1, 0))
    return None, nodes, False
