from __future__ import annotations

import json

import pytest

from cdcover.cli import main, parse_cycles


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")], out, err


def test_run_petersen(capsys):
    code, recs, _, _ = run(capsys, "run", "--family", "petersen")
    assert code == 0 and len(recs) == 1
    assert recs[0]["status"] == "success" and recs[0]["report"]["verified"]


def test_run_bridge_file(tmp_path, capsys):
    f = tmp_path / "bridge.el"
    f.write_text("0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n")
    code, recs, _, err = run(capsys, "run", "--file", str(f))
    assert code == 1 and "bridge" in err and "(2, 3)" in err


def test_run_with_oracle_and_trace(capsys):
    code, (rec,), _, _ = run(capsys, "run", "--family", "prism:3", "--oracle", "--trace")
    assert code == 0
    assert rec["oracle"]["status"] == "found" and rec["oracle"]["agrees"]
    assert len(rec["trace"]) == rec["iterations"]


def test_random_family_needs_seed(capsys):
    assert run(capsys, "run", "--family", "random_cubic:8")[0] == 1
    assert run(capsys, "run", "--family", "random_cubic:8", "--seed", "3")[0] == 0


def test_source_required(capsys):
    assert run(capsys, "run")[0] == 1
    assert run(capsys, "run", "--family", "petersen", "--corpus")[0] == 1


def test_verify_codes(tmp_path, capsys):
    g = tmp_path / "k3.el"
    g.write_text("0 1\n1 2\n2 0\n")
    c = tmp_path / "c.txt"
    c.write_text("0 1 2\n0 1 2 0\n")
    assert run(capsys, "verify", "--file", str(g), str(c))[0] == 0
    k5 = tmp_path / "k5.el"
    k5.write_text("".join(f"{i} {j}\n" for i in range(5) for j in range(i + 1, 5)))
    c.write_text("3 0 2 1 4\n3 2 4 0 1\n")
    code, (rep,), _, _ = run(capsys, "verify", "--file", str(k5), str(c))
    assert code == 3 and {m for _, _, m in rep["histogram"]} == {1}
    c.write_text("0 x\n")
    assert run(capsys, "verify", "--file", str(g), str(c))[0] == 1


def test_verify_accepts_run_record(tmp_path, capsys):
    _, (rec,), out, _ = run(capsys, "run", "--family", "complete:4")
    g = tmp_path / "k4.el"
    main(["gen", "--family", "complete:4"])
    g.write_text(capsys.readouterr().out)
    c = tmp_path / "rec.json"
    c.write_text(out)
    assert run(capsys, "verify", "--file", str(g), str(c))[0] == 0


def test_parse_cycles_formats():
    assert parse_cycles("[[0,1,2,0]]")[0].vertices == (0, 1, 2, 0)
    assert parse_cycles("0 1 2 # tri\n")[0].vertices == (0, 1, 2, 0)


def test_embed(capsys):
    code, (rec,), _, _ = run(capsys, "embed", "--k", "5")
    assert code == 0 and (rec["genus"], rec["chi"]) == (1, 0)
    code, (rec,), _, _ = run(capsys, "embed", "--fixture", "k5-torus")
    assert len(rec["faces"]) == 5 and rec["faces_as_cdc"]["malformed"] == [4]
    assert rec["faces_as_cdc"]["doubled_edges"] == [[[1, 2], [3, 4]]]
    assert run(capsys, "embed", "--k", "2")[0] == 1
    code, recs, _, _ = run(capsys, "embed")
    assert [r["genus"] for r in recs] == [0, 0, 1, 3, 6, 10]


@pytest.mark.parametrize("fmt,needle", [("dot", "graph {"), ("edge-list", "0 1\n"), ("json", '"edges"')])
def test_gen_formats(capsys, fmt, needle):
    code, _, out, _ = run(capsys, "gen", "--family", "complete:3", "--format", fmt)
    assert code == 0 and needle in out


def test_oracle_cmd(capsys):
    code, (rec,), _, _ = run(capsys, "oracle", "--family", "complete:4")
    assert code == 0 and rec["status"] == "found" and rec["verified"]
    code, (rec,), _, _ = run(capsys, "oracle", "--family", "flower_snark:5")
    assert rec["status"] == "skipped"


def test_report_single(capsys):
    code, (rec,), _, _ = run(capsys, "report", "--family", "petersen")
    assert code == 0 and rec["status"] == {"success": 1}
