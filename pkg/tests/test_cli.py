import csv
import io
import json
import subprocess
import sys

import pytest

from rcatalan.cli import main, parse_range, parse_types, run, UsageError


def test_range_grammar():
    assert parse_range("7") == [7]
    assert parse_range("5..13:odd") == [5, 7, 9, 11, 13]
    assert parse_range("2..6") == [2, 3, 4, 5, 6]
    assert parse_range("11,5,7") == [5, 7, 11]
    assert parse_range("4..8:even") == [4, 6, 8]
    for bad in ["", "5..x", "6..6:odd", "3:prime", "7..5"]:
        with pytest.raises(UsageError):
            parse_range(bad)


def test_type_list():
    assert parse_types("g2,b2,A1") == ["A1", "B2", "G2"]
    assert parse_types("A10,A2") == ["A2", "A10"]
    with pytest.raises(UsageError):
        parse_types("Q2")


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["catalan", "--type", "B2", "--m", "31"], "136\n"),
        (["catalan", "--type", "A1", "--m", "3"], "2\n"),
        (["catalan", "--type", "G2", "--m", "43"], "176\n"),
        (["nabla", "--n", "2", "--basis", "s"], "1*s[2] + (q+t)*s[1,1]\n"),
        (["nabla", "--n", "1", "--basis", "m"], "1*m[1]\n"),
    ],
)
def test_value_commands(argv, expected):
    assert run(argv) == (0, expected)


def test_nabla_pair_is_staircase():
    code, out = run(["nabla", "--n", "3", "--pair", "h[2,1]"])
    assert code == 0
    from rcatalan import QTCoeff

    assert QTCoeff.parse(out) == QTCoeff.parse("1+q+t+q^2+q*t+t^2")


def test_nabla_pretty_triangle():
    code, out = run(["nabla", "--n", "4", "--pair", "h[3,1]", "--format", "pretty"])
    assert code == 0
    assert out.splitlines()[1:] == ["1", "1 1", "1 1 1", "1 1 1 1"]


def test_nabla_json_and_errors():
    code, out = run(["nabla", "--n", "2", "--basis", "m", "--format", "json"])
    assert json.loads(out) == {"n": 2, "basis": "m", "value": "1*m[2] + (q+t+1)*m[1,1]"}
    assert run(["nabla", "--n", "3", "--pair", "h[2]"])[0] == 2
    assert run(["nabla", "--n", "3", "--pair", "h[2,x]"])[0] == 2
    assert run(["nabla", "--n", "9"])[0] == 2
    assert run(["nabla", "--n", "5", "--max-degree", "4"])[0] == 2
    assert run(["nabla", "--n", "4", "--max-degree", "4", "--pair", "h[4]"]) == (0, "1\n")


def test_orbits_b2():
    code, out = run(["orbits", "--type", "B2", "--m", "7", "--format", "json"])
    d = json.loads(out)
    assert code == 0 and d["total"] == 10 and d["regular"] == 3
    counts = {}
    for e in d["entries"]:
        label = e["stabilizer"].split("(")[0]
        counts[label] = counts.get(label, 0) + e["count"]
    assert counts == {"empty": 3, "A1": 6, "B2": 1}
    assert len({e["conjugacy_class_id"] for e in d["entries"] if e["stabilizer"].startswith("A1")}) == 2


def test_orbits_small_examples():
    d = json.loads(run(["orbits", "--type", "A1", "--m", "5", "--format", "json"])[1])
    assert {e["stabilizer"]: e["count"] for e in d["entries"]} == {"empty": 2, "A1": 1}
    assert d["total"] == 3
    d = json.loads(run(["orbits", "--type", "A2", "--m", "4", "--format", "json"])[1])
    assert d["total"] == 5
    rows = list(csv.reader(io.StringIO(run(["orbits", "--type", "A1", "--m", "5", "--format", "csv"])[1])))
    assert rows[0] == ["type", "m", "stabilizer", "conjugacy_class_id", "count"]
    burn = json.loads(run(["orbits", "--type", "F4", "--m", "13", "--mode", "burnside", "--format", "json"])[1])
    assert burn["total"] == 105 and burn["regular"] == 1


def test_verify_main_rows():
    code, out = run(["verify", "main", "--type", "G2,B2", "--ell", "7", "--format", "json"])
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [(r["type"], r["expected"], r["verdict"]) for r in rows] == [("B2", 136, "pass"), ("G2", 176, "pass")]
    assert all(set(r["paths"].values()) == {r["expected"]} for r in rows)
    assert all(r["ms"] is None for r in rows)


def test_verify_shuffle():
    code, out = run(["verify", "shuffle", "--n", "4"])
    assert code == 0 and out.startswith("PASS shuffle")


def test_verify_type_a_sweep():
    code, out = run(["verify", "type-a", "--n", "2..5", "--ell", "5..13:odd", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 4 * 5
    assert all(r["verdict"] == "pass" for r in rows)
    assert {(r["n"], r["ell"]) for r in rows if r["in_hypothesis"] == "False"} == {("4", "5"), ("5", "5")}


def test_output_is_deterministic_and_sorted():
    argv = ["verify", "subspaces", "--type", "G2,A1,B2", "--ell", "11,5,7", "--format", "json"]
    first, second = run(argv), run(argv)
    assert first == second
    keys = [(json.loads(l)["type"], json.loads(l)["ell"]) for l in first[1].splitlines()]
    assert keys == sorted(keys)


def test_parallel_matches_serial():
    argv = ["verify", "signtwist", "--type", "A2,B2,G2", "--m", "7..20", "--format", "csv"]
    assert run(argv + ["--jobs", "3"]) == run(argv)


def test_exit_codes():
    assert run(["verify", "main", "--type", "B2", "--ell", "7"])[0] == 0
    assert run(["verify", "main", "--type", "G2", "--ell", "3"])[0] == 1
    assert run(["verify", "main", "--type", "A3", "--ell", "13", "--max-points", "100"])[0] == 2
    assert run(["verify", "main", "--type", "B2"])[0] == 2
    assert run(["catalan", "--type", "D3", "--m", "5"])[0] == 2
    assert run(["catalan", "--type", "B2", "--m", "0"])[0] == 2
    assert run(["bogus"])[0] == 2
    assert run(["orbits", "--type", "A2", "--m", "4", "--max-points", "-1"])[0] == 2


def test_budget_skip_is_reported():
    code, out = run(["verify", "main", "--type", "A1,A3", "--ell", "13", "--max-points", "1000"])
    lines = out.splitlines()
    assert code == 2
    assert lines[0].startswith("PASS main A1")
    assert lines[1].startswith("SKIP main A3") and "MAX_POINTS" in lines[1]


def test_budget_flags_do_not_leak(monkeypatch):
    import os

    monkeypatch.delenv("MAX_POINTS", raising=False)
    run(["orbits", "--type", "A1", "--m", "5", "--max-points", "10"])
    assert "MAX_POINTS" not in os.environ


def test_env_budget_override(monkeypatch):
    monkeypatch.setenv("MAX_POINTS", "10")
    assert run(["orbits", "--type", "A2", "--m", "4"])[0] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rcatalan", "catalan", "--type", "B2", "--m", "31"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "136\n"


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "verify" in capsys.readouterr().out
