import csv
import io
import json

import pytest

from cbt.cli import CSV_HEADER, main, parse_gcb_json, render_gcb_json
from cbt.canonical import Session
from cbt.partition import Context, l_regular_partitions


def run(*argv, env=None, monkeypatch=None):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_gcb_text():
    code, out = run("gcb", "--k", "2", "--l", "2", "--mu", "2", "--algo", "fast", "--format", "text")
    assert code == 0 and out.strip() == "2: 1 | 1,1: v"


def test_gcb_not_regular(capsys):
    code, _ = run("gcb", "--k", "2", "--l", "2", "--mu", "1,1")
    assert code == 1
    assert "mu is not l-regular" in capsys.readouterr().err


def test_gcb_json_shape_and_round_trip():
    code, out = run("gcb", "--k", "4", "--l", "5", "--mu", "20,10,0,0", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert len(obj) == 5
    assert len(obj["g"]) == 24
    ctx, mu, algo, vec = parse_gcb_json(out)
    assert (ctx, mu, algo) == (Context(4, 5), (20, 10), "fast")
    assert vec == Session(ctx, "llt").gcb(mu)
    assert parse_gcb_json(render_gcb_json(ctx, mu, algo, vec))[3] == vec


@pytest.mark.parametrize("algo", ["llt", "soergel"])
def test_gcb_algorithms_print_the_same(algo):
    ref = run("gcb", "--k", "3", "--l", "3", "--mu", "5,2", "--algo", "fast")[1]
    assert run("gcb", "--k", "3", "--l", "3", "--mu", "5,2", "--algo", algo)[1] == ref


def test_gcb_csv():
    code, out = run("gcb", "--k", "2", "--l", "2", "--mu", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["la", "d"], ["4", "1"], ["3,1", "v"]]


def test_warm_cache_output_is_identical(tmp_path, monkeypatch):
    monkeypatch.setenv("CBT_CACHE", str(tmp_path / "cache.ndjson"))
    cold = run("gcb", "--k", "4", "--l", "5", "--mu", "40,20", "--format", "json")[1]
    assert (tmp_path / "cache.ndjson").exists()
    warm = run("gcb", "--k", "4", "--l", "5", "--mu", "40,20", "--format", "json")[1]
    assert cold == warm
    code, out = run("cache", "verify")
    assert code == 0 and "0 invalid" in out
    code, out = run("cache", "info")
    assert "18 entries" in out


def test_compare_pass_and_sweep():
    assert run("compare", "--k", "2", "--l", "2", "--mu", "4")[0] == 0
    code, out = run("compare", "--k", "3", "--l", "2", "--sweep", "8")
    expected = sum(1 for n in range(9) for _ in l_regular_partitions(n, 3, 2))
    assert code == 0 and out.startswith("PASS") and f"{expected} diagram" in out


def test_compare_fault_injection():
    code, out = run("compare", "--k", "3", "--l", "2", "--mu", "3,1", "--inject-fault")
    assert code == 2
    assert out.startswith("FAIL") and "mu=3,1 la=2,1,1" in out


def test_compare_json():
    code, out = run("compare", "--k", "2", "--l", "3", "--sweep", "5", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "PASS" and obj["mismatches"] == []


def test_bench_csv():
    code, out = run("bench", "--k", "4", "--l", "5", "--mu", "20,10,0,0", "--algo", "fast,llt,soergel")
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_HEADER
    assert [(r[0], r[3], r[5]) for r in rows[1:]] == [
        ("fast", "20,10,0,0", "5"), ("llt", "20,10,0,0", "16"), ("soergel", "20,10,0,0", "31")]


def test_bench_suite_filter():
    code, out = run("bench", "--suite", "table1", "--algo", "fast", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["n_count"] for r in rows] == [5, 18, 8, 53]


def test_decmat():
    code, out = run("decmat", "--k", "2", "--l", "2", "--n", "2", "--at-one", "--format", "json")
    obj = json.loads(out)
    assert obj["entries"] == [[1], [1]] and obj["cols"] == [[2]]
    code, out = run("decmat", "--k", "2", "--l", "2", "--n", "1", "--at-one", "--format", "csv")
    assert out.splitlines() == ["la,1", "1,1"]
    code, out = run("decmat", "--k", "2", "--l", "2", "--n", "4")
    assert code == 0 and "3,1 |" in out


def test_selftest():
    code, out = run("selftest", "--sweep", "5")
    assert code == 0 and "properties passed" in out.splitlines()[-1]


@pytest.mark.parametrize("argv", [
    ["gcb", "--k", "2"],
    ["gcb", "--k", "2", "--l", "1", "--mu", "1"],
    ["gcb", "--k", "2", "--l", "2", "--mu", "3,2,1"],
    ["gcb", "--k", "2", "--l", "2", "--mu", "x"],
    ["gcb", "--k", "2", "--l", "2", "--mu", "1", "--algo", "nope"],
    ["bench", "--suite", "nope"],
    ["cache", "info"],
])
def test_usage_errors(argv, monkeypatch):
    monkeypatch.delenv("CBT_CACHE", raising=False)
    assert run(*argv)[0] == 1


def test_argparse_errors_exit_with_one():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["gcb", "--k", "two"])
    assert exc.value.code == 1


def test_internal_errors_exit_with_three(monkeypatch):
    from cbt import canonical
    from cbt.recursion import AlgorithmError

    def boom(*a, **k):
        raise AlgorithmError("forced")

    monkeypatch.setattr(canonical.Session, "gcb", boom)
    assert run("gcb", "--k", "2", "--l", "2", "--mu", "2")[0] == 3
