# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled oracle kernels (64-bit masks); see _kernels_py for semantics."""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

NAME = "cython"


def enumerate_cycles_raw(list adj, int max_len, long cap):
    cdef int n = len(adj)
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef int *deg = <int *> malloc(n * sizeof(int))
    cdef int *nb = <int *> malloc(n * n * sizeof(int))
    cdef int *path = <int *> malloc((n + 1) * sizeof(int))
    cdef int *it = <int *> malloc((n + 1) * sizeof(int))
    cdef int s, u, w, i, k, depth
    cdef uint64_t on
    out = []
    try:
        for u in range(n):
            deg[u] = len(adj[u])
            for i in range(deg[u]):
                nb[u * n + i] = adj[u][i]
        for s in range(n):
            depth = 1
            path[0] = s
            it[0] = 0
            on = (<uint64_t> 1) << s
            while depth > 0:
                u = path[depth - 1]
                i = it[depth - 1]
                if i == deg[u]:
                    on &= ~((<uint64_t> 1) << u)
                    depth -= 1
                    continue
                it[depth - 1] = i + 1
                w = nb[u * n + i]
                if w == s and depth >= 3 and path[1] < path[depth - 1]:
                    out.append(tuple([path[k] for k in range(depth)]))
                    if len(out) > cap:
                        return out, True
                    continue
                if w > s and not (on >> w) & 1 and depth < max_len:
                    on |= (<uint64_t> 1) << w
                    path[depth] = w
                    it[depth] = 0
                    depth += 1
    finally:
        free(deg)
        free(nb)
        free(path)
        free(it)
    return out, False


def cdc_search(list masks, int n_edges, long node_limit):
    if n_edges > 64:
        raise ValueError("compiled kernel supports at most 64 edges")
    cdef int nm = len(masks)
    cdef uint64_t full = ((<uint64_t> 1) << n_edges) - 1 if n_edges < 64 else <uint64_t> -1
    cdef uint64_t *mk = <uint64_t *> malloc((nm + 1) * sizeof(uint64_t))
    cdef int *cnt = <int *> malloc(64 * sizeof(int))
    cdef int *byedge = <int *> malloc((64 * nm + 1) * sizeof(int))
    cdef int cap = nm + 2 * n_edges + 2
    cdef uint64_t *s_once = <uint64_t *> malloc(cap * sizeof(uint64_t))
    cdef uint64_t *s_twice = <uint64_t *> malloc(cap * sizeof(uint64_t))
    cdef int *s_edge = <int *> malloc(cap * sizeof(int))
    cdef int *s_pos = <int *> malloc(cap * sizeof(int))
    cdef int *chosen = <int *> malloc(cap * sizeof(int))
    cdef int top = 0, e, pos, c, j
    cdef long nodes = 0
    cdef uint64_t once, twice, m, free_bits
    failed = set()
    try:
        for j in range(nm):
            mk[j] = <uint64_t> masks[j]
        for e in range(n_edges):
            cnt[e] = 0
            for j in range(nm):
                if (mk[j] >> e) & 1:
                    byedge[e * nm + cnt[e]] = j
                    cnt[e] += 1
        s_once[0] = 0
        s_twice[0] = 0
        s_edge[0] = -1
        s_pos[0] = 0
        top = 1
        while top > 0:
            once = s_once[top - 1]
            twice = s_twice[top - 1]
            e = s_edge[top - 1]
            pos = s_pos[top - 1]
            if twice == full:
                return [chosen[j] for j in range(top - 1)], nodes, False
            if e < 0:
                if (once, twice) in failed:
                    top -= 1
                    continue
                nodes += 1
                if nodes > node_limit:
                    return None, nodes, True
                free_bits = full & ~twice
                e = 0
                while not (free_bits >> e) & 1:
                    e += 1
                s_edge[top - 1] = e
            while pos < cnt[e] and mk[byedge[e * nm + pos]] & twice:
                pos += 1
            if pos == cnt[e]:
                failed.add((once, twice))
                top -= 1
                continue
            s_pos[top - 1] = pos + 1
            c = byedge[e * nm + pos]
            m = mk[c]
            chosen[top - 1] = c
            s_once[top] = once ^ m
            s_twice[top] = twice | (once & m)
            s_edge[top] = -1
            s_pos[top] = 0
            top += 1
    finally:
        free(mk)
        free(cnt)
        free(byedge)
        free(s_once)
        free(s_twice)
        free(s_edge)
        free(s_pos)
        free(chosen)
    return None, nodes, False
