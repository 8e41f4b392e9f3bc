"""Independent check that a multiset of walks is a cycle double cover."""
from __future__ import annotations

import dataclasses
from collections import Counter
from typing import Iterable, Sequence

from .graph import Edge, Graph, edge


@dataclasses.dataclass
class VerifyReport:
    ok: bool
    histogram: dict[Edge, int]
    under: list[Edge]
    over: list[Edge]
    malformed: list[int]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "histogram": [[u, v, m] for (u, v), m in sorted(self.histogram.items())],
            "under": [list(e) for e in self.under],
            "over": [list(e) for e in self.over],
            "malformed": self.malformed,
        }


def _is_cycle(g: Graph, vs: Sequence[int]) -> bool:
    if len(vs) < 4 or vs[0] != vs[-1]:
        return False
    body = vs[:-1]
    if len(set(body)) != len(body):
        return False
    return all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))


def verify_cdc(g: Graph, cycles: Iterable) -> VerifyReport:
    """Every element must be a simple cycle of ``g`` and every edge must be
    covered exactly twice.  Elements may be Walks or vertex sequences."""
    hist: Counter = Counter({e: 0 for e in g.edges})
    malformed = []
    for i, c in enumerate(cycles):
        vs = tuple(getattr(c, "vertices", c))
        if not _is_cycle(g, vs):
            malformed.append(i)
        for a, b in zip(vs, vs[1:]):
            if g.has_edge(a, b):
                hist[edge(a, b)] += 1
    under = sorted(e for e, m in hist.items() if m < 2)
    over = sorted(e for e, m in hist.items() if m > 2)
    ok = not under and not over and not malformed
    return VerifyReport(ok, dict(hist), under, over, malformed)
