"""Command-line front end: gen, run, verify, oracle, embed, report.

Graph sources are ``--file PATH`` (edge list), ``--family NAME[:P1,P2,..]``
or ``--corpus``.  Reports go to stdout as one JSON record per line;
diagnostics go to stderr.

Exit codes: 0 ok, 1 input error, 2 non-termination finding, 3 verify
rejected the cycles.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .embedding import (DomainError, doubled_edges, face_trace, faces_as_cdc, genus_bound,
                        inductive_complete_embedding, k5_torus_fixture)
from .generators import FAMILIES, FamilySpec, corpus_manifest, make, random_cubic_bridgeless
from .graph import Graph, GraphError, is_valid_input, parse_edge_list, to_dot, to_edge_list
from .lift import InputError
from .oracle import ResourceError, brute_force_cdc
from .reduce import run_pipeline
from .verify import verify_cdc
from .walks import Walk

EXIT_OK, EXIT_INPUT, EXIT_FINDING, EXIT_REJECT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def _warn(msg: str) -> None:
    print(f"cdcover: {msg}", file=sys.stderr)


def parse_family(text: str, seed: int | None) -> tuple[str, Graph]:
    name, _, rest = text.partition(":")
    params = tuple(int(p) for p in rest.split(",") if p.strip()) if rest else ()
    if name == "random_cubic":
        if seed is None:
            raise UsageError("random_cubic needs --seed")
        if len(params) != 1:
            raise UsageError("random_cubic takes one parameter (n)")
        return f"random_cubic({params[0]},{seed})", random_cubic_bridgeless(params[0], seed)
    if name not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}, random_cubic")
    spec = FamilySpec(name, params)
    return spec.name, make(spec)


def load_graphs(args) -> list[tuple[str, Graph]]:
    sources = [bool(args.file), bool(args.family), bool(args.corpus)]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --file, --family, --corpus")
    if args.file:
        with open(args.file) as fh:
            return [(args.file, parse_edge_list(fh.read()))]
    if args.family:
        return [parse_family(args.family, args.seed)]
    return corpus_manifest()


def parse_cycles(text: str) -> list[Walk]:
    """One cycle per line (closing vertex optional), or a JSON list of
    cycles, or a JSON record carrying a ``cycles`` field."""
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        data = json.loads(stripped)
        if isinstance(data, dict):
            data = data["cycles"]
        rows = [[int(v) for v in row] for row in data]
    else:
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([int(t) for t in line.replace(",", " ").split()])
            except ValueError:
                raise GraphError(f"line {lineno}: expected integers") from None
    out = []
    for row in rows:
        if not row:
            raise GraphError("empty cycle")
        if row[0] != row[-1] or len(row) == 1:
            row = row + [row[0]]
        out.append(Walk(tuple(row)))
    return out


# -- subcommands --------------------------------------------------------------

def cmd_gen(args) -> int:
    for name, g in load_graphs(args):
        if args.format == "dot":
            sys.stdout.write(to_dot(g))
        elif args.format == "edge-list":
            sys.stdout.write(to_edge_list(g))
        else:
            _emit({"graph": name, "vertices": list(g.vertices), "edges": [list(e) for e in g.edges]})
    return EXIT_OK


def _worst(codes: set[int]) -> int:
    for c in (EXIT_INPUT, EXIT_REJECT, EXIT_FINDING):
        if c in codes:
            return c
    return EXIT_OK


def cmd_run(args) -> int:
    codes: set[int] = set()
    for name, g in load_graphs(args):
        trace: list | None = [] if args.trace else None
        try:
            outcome = run_pipeline(g, args.max_iterations, trace)
        except InputError as exc:
            _warn(f"{name}: {exc}")
            _emit({"graph": name, "status": "input_error", "error": str(exc)})
            codes.add(EXIT_INPUT)
            continue
        record = {"graph": name, "n": len(g.vertices), "m": len(g.edges), **outcome.to_json()}
        if trace is not None:
            record["trace"] = trace
        if args.oracle:
            record["oracle"] = _oracle_record(g, outcome.ok)
        if not outcome.ok:
            _warn(f"{name}: non-termination ({outcome.report.get('reason')})")
            codes.add(EXIT_FINDING)
        elif not outcome.report.get("verified"):
            _warn(f"{name}: claimed success failed verification")
            codes.add(EXIT_REJECT)
        _emit(record)
    return _worst(codes)


def _oracle_record(g: Graph, pipeline_ok: bool) -> dict:
    try:
        found = brute_force_cdc(g)
    except ResourceError as exc:
        return {"status": "skipped", "reason": str(exc)}
    if found is None:
        return {"status": "exhausted", "agrees": not pipeline_ok}
    ok = verify_cdc(g, found).ok
    return {"status": "found", "verified": ok, "agrees": ok or not pipeline_ok,
            "cycles": [list(c.vertices) for c in found]}


def cmd_verify(args) -> int:
    if not args.file or not args.cycles:
        raise UsageError("verify needs --file GRAPH and a cycles file")
    with open(args.file) as fh:
        g = parse_edge_list(fh.read())
    with open(args.cycles) as fh:
        try:
            cycles = parse_cycles(fh.read())
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphError(f"malformed cycles file: {exc}") from None
    report = verify_cdc(g, cycles)
    _emit(report.to_json())
    return EXIT_OK if report.ok else EXIT_REJECT


def cmd_oracle(args) -> int:
    for name, g in load_graphs(args):
        verdict = is_valid_input(g)
        if not verdict.ok:
            _warn(f"{name}: {verdict.describe()}")
            return EXIT_INPUT
        record = {"graph": name, **_oracle_record(g, True)}
        record.pop("agrees", None)
        _emit(record)
    return EXIT_OK


def _embed_record(label: str, fs, k: int | None) -> dict:
    vr = faces_as_cdc(fs)
    rec = {"embedding": label, **fs.to_json(), "faces_as_cdc": {"ok": vr.ok, "malformed": vr.malformed}}
    if k is not None:
        rec["bound"] = dict(zip(("genus", "chi"), genus_bound(k)))
    if vr.malformed:
        rec["faces_as_cdc"]["doubled_edges"] = [
            sorted(list(e) for e in doubled_edges(fs.faces[i])) for i in vr.malformed]
    return rec


def cmd_embed(args) -> int:
    if args.fixture:
        if args.fixture != "k5-torus":
            raise UsageError(f"unknown fixture {args.fixture!r}")
        _emit(_embed_record("k5-torus", face_trace(k5_torus_fixture()), None))
        return EXIT_OK
    ks = range(3, 9) if args.k is None else [args.k]
    for k in ks:
        _emit(_embed_record(f"K{k}", face_trace(inductive_complete_embedding(k)), k))
    return EXIT_OK


def cmd_report(args) -> int:
    if not (args.file or args.family):
        args.corpus = True
    status: Counter = Counter()
    checks: Counter = Counter()
    failed: Counter = Counter()
    iterations = 0
    findings = []
    for name, g in load_graphs(args):
        try:
            out = run_pipeline(g, args.max_iterations)
        except InputError as exc:
            _warn(f"{name}: {exc}")
            status["input_error"] += 1
            continue
        status[out.status] += 1
        iterations += out.iterations
        if not out.ok:
            findings.append(name)
        elif not out.report.get("verified"):
            status["verify_rejected"] += 1
        for check, tally in out.report["audit"]["checks"].items():
            checks[check] += tally["passed"]
            failed[check] += tally["failed"]
    _emit({"status": dict(status), "iterations": iterations, "findings": findings,
           "audit": {c: {"passed": checks[c], "failed": failed[c]} for c in sorted(checks | failed)}})
    if status["input_error"]:
        return EXIT_INPUT
    return EXIT_FINDING if findings else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cdcover", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def sources(sp):
        sp.add_argument("--file", help="edge-list file")
        sp.add_argument("--family", help="family spec, e.g. petersen, prism:5, random_cubic:12")
        sp.add_argument("--corpus", action="store_true", help="the bundled corpus")
        sp.add_argument("--seed", type=int, default=None, help="seed for random families")

    sp = sub.add_parser("gen", help="print graphs")
    sources(sp)
    sp.add_argument("--format", choices=("json", "dot", "edge-list"), default="edge-list")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("run", help="run the double-cover pipeline")
    sources(sp)
    sp.add_argument("--max-iterations", type=int, default=None)
    sp.add_argument("--trace", action="store_true", help="include per-iteration trace")
    sp.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    sp.add_argument("--format", choices=("json",), default="json")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("verify", help="check a cycle list against a graph")
    sp.add_argument("--file", help="edge-list file")
    sp.add_argument("cycles", nargs="?", help="cycles file")
    sp.add_argument("--format", choices=("json",), default="json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="brute-force CDC search")
    sources(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("embed", help="complete-graph embeddings and the K5 torus fixture")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--fixture", default=None, help="k5-torus")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("report", help="corpus summary with audit totals")
    sources(sp)
    sp.add_argument("--max-iterations", type=int, default=None)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, DomainError, OSError, ValueError) as exc:
        _warn(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
