import csv
import io
import json
import subprocess
import sys

import pytest

from diamfree import cli
from diamfree.families import X


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("DIAMFREE_CACHE_DIR", str(d))
    return d


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_gen_counts(capsys):
    code, out = run(capsys, "gen", "1", "1", "2")
    assert code == 0 and len(out.splitlines()) == 12
    code, out = run(capsys, "gen", "1", "6", "2")
    assert code == 0 and len(out.splitlines()) == 252
    assert all(set(line) <= set("-0+") for line in out.splitlines())


def test_gen_capacity_error(capsys):
    code, _ = run(capsys, "gen", "3", "3", "3", "--enum-limit", "10")
    assert code == 2


@pytest.mark.parametrize("sig,alpha", [((1, 1, 2), 6), ((1, 3, 2), 22), ((2, 1, 2), 15)])
def test_solve_alpha(capsys, sig, alpha):
    code, rep = run_json(capsys, "solve", *map(str, sig))
    assert code == 0 and rep["status"] == "ok"
    assert rep["result"]["alpha"] == alpha and len(rep["result"]["witness"]) == alpha


def test_solve_enumerate_classify(capsys):
    code, rep = run_json(capsys, "solve", "1", "2", "2", "--enumerate", "--classify")
    res = rep["result"]
    assert code == 0 and res["alpha"] == 12 and res["class_count"] == 3
    assert res["enumerated_count"] == 45
    assert sorted(c["stabilizer"] for c in res["classes"]) == [6, 6, 24]
    code, rep = run_json(capsys, "solve", "1", "1", "2", "--enumerate", "--families")
    assert rep["result"]["enumerated_count"] == 8 == len(rep["result"]["families"])


def test_solve_threshold(capsys):
    # threshold 2 forbids every pair at distance >= sqrt 2, i.e. all distinct pairs
    code, rep = run_json(capsys, "solve", "1", "1", "2", "--threshold", "2")
    assert code == 0 and rep["result"]["alpha"] == 1


def test_solve_timeout(capsys, cache):
    code, rep = run_json(capsys, "solve", "1", "5", "2", "--method", "bnb", "--time-limit", "0.01")
    assert code == 3 and rep["status"] == "timeout"
    assert rep["result"]["lower"] <= 58 and (rep["result"]["upper"] is None or rep["result"]["upper"] >= 58)
    assert not list(cache.glob("*.json"))


def test_thread_count_does_not_change_output(capsys, tmp_path, monkeypatch):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("DIAMFREE_CACHE_DIR", str(tmp_path / f"c{threads}"))
        outs.append(run(capsys, "solve", "1", "3", "2", "--enumerate", "--classify", "--threads", threads)[1])
    assert outs[0] == outs[1]


def test_cache_reuse_and_force(capsys, cache, monkeypatch):
    first = run(capsys, "solve", "1", "2", "2")[1]
    files = list(cache.glob("*.json"))
    assert len(files) == 1
    calls = []
    monkeypatch.setattr(cli, "_solve", lambda cfg: calls.append(cfg) or ({"alpha": -1}, "ok", 0))
    assert run(capsys, "solve", "1", "2", "2")[1] == first and not calls
    # thread count and format are not part of the cache key
    run(capsys, "solve", "1", "2", "2", "--threads", "3")
    assert not calls
    forced = json.loads(run(capsys, "solve", "1", "2", "2", "--force")[1])
    assert len(calls) == 1 and forced["result"]["alpha"] == -1


def test_formats(capsys):
    _, out = run(capsys, "solve", "2", "1", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["alpha"] == "15"
    _, out = run(capsys, "solve", "2", "1", "2", "--format", "text")
    assert out.startswith("# diamfree") and "alpha=15" in out


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out = run(capsys, "solve", "1", "1", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]["alpha"] == 6


def test_canon_json_and_trit_files(capsys, tmp_path):
    fam = X(2)
    jf = tmp_path / "x2.json"
    jf.write_text(fam.dumps())
    tf = tmp_path / "x2.txt"
    tf.write_text("".join(str(x) + "\n" for x in reversed(fam.members)))
    _, a = run_json(capsys, "canon", str(jf))
    _, b = run_json(capsys, "canon", str(tf))
    assert a["result"]["stabilizer"] == 6 == b["result"]["stabilizer"]
    assert a["result"]["matrix"] == b["result"]["matrix"] and a["result"]["size"] == 12


def test_verify_exit_codes(capsys):
    code, rep = run_json(capsys, "verify", "main-theorem", "--k", "1..3")
    assert code == 0 and rep["result"]["passed"]
    code, rep = run_json(capsys, "verify", "main-theorem", "--k", "6")
    assert code == 0 and rep["result"]["skipped"]
    code, rep = run_json(capsys, "verify", "main-theorem", "--k", "5", "--time-limit", "0.001")
    assert code == 3 and rep["status"] == "timeout"


def test_verify_johnson_reports_t7(capsys):
    code, rep = run_json(capsys, "verify", "johnson")
    failed = [c["name"] for c in rep["result"]["checks"] if not c["passed"]]
    assert code == 1 and failed == ["t=7 size bound <= 181"]


def test_johnson_verify(capsys):
    code, rep = run_json(capsys, "johnson-verify")
    assert code == 0
    assert [v["size"] for v in rep["result"]["variants"]] == [258, 258, 258]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "diamfree", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "diamfree" in proc.stdout


@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_cached_output_matches_fresh(capsys, fmt):
    fresh = run(capsys, "solve", "1", "2", "2", "--enumerate", "--classify", "--format", fmt)[1]
    cached = run(capsys, "solve", "1", "2", "2", "--enumerate", "--classify", "--format", fmt)[1]
    assert fresh == cached
