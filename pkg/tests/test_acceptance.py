"""Acceptance gate: one PASS/FAIL line per primary criterion."""
from __future__ import annotations

import subprocess
import sys
import time
from collections import Counter

import pytest

from cdcover.audit import ConservationError
from cdcover.embedding import (K5_TORUS_FACES, doubled_edges, face_trace, faces_as_cdc,
                               genus_bound, inductive_complete_embedding, k5_torus_fixture)
from cdcover.generators import complete, corpus_manifest
from cdcover.oracle import brute_force_cdc
from cdcover.reduce import run_pipeline
from cdcover.verify import verify_cdc
from cdcover.walks import canonical_sequence

from conftest import ACCEPTANCE_LINES


def record(name: str, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {'PASS' if ok else 'FAIL'} {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus_runs():
    runs = {}
    crashes = {}
    t = time.perf_counter()
    for name, g in corpus_manifest():
        try:
            runs[name] = (g, run_pipeline(g))
        except ConservationError as exc:
            crashes[name] = str(exc)
    return runs, crashes, time.perf_counter() - t


def test_conservation_suite(corpus_runs):
    runs, crashes, elapsed = corpus_runs
    checks = failed = 0
    for _, out in runs.values():
        tally = out.report["audit"]["checks"].get("conservation", {})
        checks += tally.get("passed", 0)
        failed += tally.get("failed", 0)
    ok = not crashes and failed == 0 and elapsed < 60
    record("conservation", ok, f"{len(runs)} graphs, {checks} stage checks, {failed} broken, "
           f"{len(crashes)} crashes, {elapsed:.2f}s (limit 60s)")


def test_end_to_end_success(corpus_runs):
    runs, crashes, _ = corpus_runs
    status = Counter(out.status for _, out in runs.values())
    rejected = [n for n, (g, out) in runs.items() if out.ok and not verify_cdc(g, out.cycles).ok]
    findings = [n for n, (_, out) in runs.items() if not out.ok]
    ok = status["success"] == len(corpus_manifest()) and not rejected and not crashes
    record("end_to_end", ok, f"success {status['success']}/{len(corpus_manifest())}, "
           f"verify rejections {len(rejected)}, non-termination findings {findings}")


AUDITS = ("segment_ends_odd", "bifurcation_degree_3",
          "branch_cut_edges", "even_aux_count", "merge_cycles_multiset_law",
          "segment_cycle_multiset_law", "surgery_multiset_law")


def test_structural_audits(corpus_runs):
    runs, _, _ = corpus_runs
    passed, failed = Counter(), Counter()
    for _, out in runs.values():
        for name, tally in out.report["audit"]["checks"].items():
            passed[name] += tally["passed"]
            failed[name] += tally["failed"]
    ok = all(failed[a] == 0 for a in AUDITS)
    detail = ", ".join(f"{a} {passed[a]}/{passed[a] + failed[a]}" for a in AUDITS)
    record("structural_audits", ok, detail)


def test_oracle_equivalence(corpus_runs):
    runs, _, _ = corpus_runs
    small = [(n, g, out) for n, (g, out) in runs.items() if len(g.edges) <= 20]
    worst = 0.0
    bad, agree = [], 0
    for name, g, out in small:
        t = time.perf_counter()
        found = brute_force_cdc(g)
        worst = max(worst, time.perf_counter() - t)
        oracle_ok = found is not None and verify_cdc(g, found).ok
        if not oracle_ok:
            bad.append(name)
        elif out.ok:
            agree += 1
    pipeline_ok = sum(out.ok for _, _, out in small)
    ok = not bad and agree == pipeline_ok and worst < 10
    record("oracle_equivalence", ok, f"{len(small)} graphs with |E|<=20, oracle failures {bad}, "
           f"pipeline success => oracle success on {agree}/{pipeline_ok}, "
           f"slowest {worst:.3f}s (limit 10s)")


def test_k5_fixture():
    k5 = complete(5)
    hamiltonian = [(3, 0, 2, 1, 4, 3), (3, 2, 4, 0, 1, 3)]  # v4v1v3v2v5v4, v4v3v5v1v2v4
    rep = verify_cdc(k5, hamiltonian)
    ones = not rep.ok and len(rep.histogram) == 10 and set(rep.histogram.values()) == {1}
    out = run_pipeline(k5)
    own = out.ok and out.report.get("shortcut") == "all_even" and verify_cdc(k5, out.cycles).ok
    record("k5_fixture", ones and own,
           f"Hamiltonian pair coverage {sorted(set(rep.histogram.values()))} on 10 edges; "
           f"pipeline K5 all-even run verified={own}")


def test_embedding_table():
    t = time.perf_counter()
    rows = []
    for k in range(3, 9):
        fs = face_trace(inductive_complete_embedding(k))
        rows.append((k, fs.genus, fs.chi, (fs.genus, fs.chi) == genus_bound(k)))
    elapsed = time.perf_counter() - t
    ok = all(r[3] for r in rows) and elapsed < 1
    table = " ".join(f"K{k}:g={g},chi={c}" for k, g, c, _ in rows)
    record("embedding_table", ok, f"{table}; {elapsed * 1000:.1f}ms (limit 1s)")


def test_k5_torus_faces():
    fs = face_trace(k5_torus_fixture())
    got = sorted(f.canonical().vertices for f in fs.faces)
    want = sorted(canonical_sequence(f + (f[0],)) for f in K5_TORUS_FACES)
    rep = faces_as_cdc(fs)
    flagged = [fs.faces[i] for i in rep.malformed]
    doubled = doubled_edges(flagged[0]) if len(flagged) == 1 else set()
    ok = got == want and len(flagged) == 1 and doubled == {(3, 4), (1, 2)}
    record("k5_torus_faces", ok,
           f"faces match={got == want}, non-cycle faces={len(flagged)}, "
           f"doubled edges={sorted(doubled)} (v4v5, v2v3)")


def test_determinism():
    cmd = [sys.executable, "-m", "cdcover", "run", "--corpus", "--seed", "1"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    record("determinism", ok, f"two runs, {len(a.stdout)} bytes each, identical={a.stdout == b.stdout}, "
           f"exit codes {a.returncode}/{b.returncode}")
