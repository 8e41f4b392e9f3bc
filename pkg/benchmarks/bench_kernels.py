"""Compare the compiled and pure-Python oracle kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from cdcover import _kernels_py, kernels
from cdcover.generators import complete, corpus_manifest, petersen, prism
from cdcover.oracle import enumerate_cycles


def _adj(g):
    index = {v: i for i, v in enumerate(g.vertices)}
    return [sorted(index[w] for w in g.adjacency[v]) for v in g.vertices]


def _masks(g):
    eid = {e: i for i, e in enumerate(g.edges)}
    out = []
    for c in enumerate_cycles(g):
        m = 0
        for e in c.edges():
            m |= 1 << eid[e]
        out.append(m)
    return out


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = [("python", _kernels_py)]
    if kernels.compiled_kernels is not None:
        backends.append(("cython", kernels.compiled_kernels))
    else:
        print("compiled kernels unavailable; timing the fallback only")

    print(f"{'case':28s}" + "".join(f"{n:>12s}" for n, _ in backends) + f"{'speedup':>10s}")
    cases = [(f"enumerate {name}", g) for name, g in
             (("K7", complete(7)), ("K8", complete(8)), ("petersen", petersen()), ("prism(6)", prism(6)))]
    for label, g in cases:
        adj = _adj(g)
        times = [best_of(lambda k=k: k.enumerate_cycles_raw(adj, len(adj), 10**7), args.repeat)
                 for _, k in backends]
        _row(label, times)
    small = [(n, g) for n, g in corpus_manifest() if len(g.edges) <= 20]
    prepared = [(g, _masks(g)) for _, g in small]
    times = []
    for _, k in backends:
        times.append(best_of(lambda k=k: [k.cdc_search(m, len(g.edges), 2_000_000) for g, m in prepared],
                             args.repeat))
    _row(f"cdc_search x{len(prepared)} graphs", times)


def _row(label, times):
    speed = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else ""
    print(f"{label:28s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
