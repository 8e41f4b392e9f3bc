"""Named invariant checks collected during a pipeline run."""
from __future__ import annotations

import dataclasses
from collections import Counter

from .graph import Graph


class ConservationError(AssertionError):
    """Edge coverage drifted away from the constant-2 map."""


@dataclasses.dataclass
class AuditLog:
    passed: Counter = dataclasses.field(default_factory=Counter)
    failed: Counter = dataclasses.field(default_factory=Counter)
    failures: list = dataclasses.field(default_factory=list)
    max_failures_kept: int = 50

    def check(self, name: str, ok: bool, detail=None) -> bool:
        if ok:
            self.passed[name] += 1
        else:
            self.failed[name] += 1
            if len(self.failures) < self.max_failures_kept:
                self.failures.append({"check": name, "detail": detail})
        return ok

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        names = sorted(set(self.passed) | set(self.failed))
        return {
            "checks": {n: {"passed": self.passed[n], "failed": self.failed[n]} for n in names},
            "failures": self.failures,
        }


def coverage_defects(g: Graph, cov: Counter) -> dict:
    """Edges whose coverage differs from 2, plus coverage off the graph."""
    out = {}
    for e in g.edges:
        if cov.get(e, 0) != 2:
            out[e] = cov.get(e, 0)
    known = set(g.edges)
    for e, m in cov.items():
        if m and e not in known:
            out[e] = m
    return out


def check_conservation(g: Graph, cov: Counter, stage: str, audit: AuditLog | None) -> None:
    defects = coverage_defects(g, cov)
    if audit is not None:
        audit.check("conservation", not defects, {"stage": stage, "defects": _keys(defects)})
    if defects:
        raise ConservationError(f"coverage broken at stage {stage}: {_keys(defects)}")


def _keys(d: dict) -> list:
    return [[list(e), m] for e, m in sorted(d.items())][:20]
