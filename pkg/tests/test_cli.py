import json
import subprocess
import sys

import pytest

from kpath.cli import bench_rows, main, selftest_checks

TRIANGLE = "3 3 undirected\n1 2\n2 3\n1 3\n"
STAR = "4 3 undirected\n1 2\n1 3\n1 4\n"


@pytest.fixture
def graphs(tmp_path):
    files = {}
    for name, text in (("k3", TRIANGLE), ("star", STAR), ("bad", "3 2 undirected\n1 2\n2 x\n")):
        f = tmp_path / f"{name}.txt"
        f.write_text(text)
        files[name] = str(f)
    return files


def test_detect_yes(graphs, capsys):
    assert main(["detect", graphs["k3"], "-k", "3"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "yes"


def test_find_none(graphs, capsys):
    assert main(["find", graphs["star"], "-k", "4"]) == 1
    assert capsys.readouterr().out.strip() == "none"


def test_edges_flag(graphs, capsys):
    assert main(["detect", graphs["star"], "--edges", "2"]) == 0
    assert main(["detect", graphs["star"], "--edges", "3"]) == 1


def test_deterministic_output(graphs, capsys):
    main(["detect", graphs["k3"], "-k", "3", "--trials", "64", "--seed", "7"])
    first = capsys.readouterr().out
    main(["detect", graphs["k3"], "-k", "3", "--trials", "64", "--seed", "7"])
    assert capsys.readouterr().out == first


def test_json_schema(graphs, capsys):
    assert main(["find", graphs["k3"], "-k", "3", "--format", "json", "--verify"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"answer", "k", "n", "m", "trials", "seed", "elapsed_ms", "path", "verified"}
    assert report["answer"] == "yes" and sorted(report["path"]) == [1, 2, 3] and report["verified"]
    main(["detect", graphs["k3"], "-k", "3", "--format", "json"])
    assert set(json.loads(capsys.readouterr().out)) == {"answer", "k", "n", "m", "trials", "seed", "elapsed_ms"}


def test_verify_detect(graphs, capsys):
    assert main(["detect", graphs["star"], "-k", "3", "--verify"]) == 0
    assert "verify: ok" in capsys.readouterr().out


def test_random_seed_is_reported(graphs, capsys):
    main(["detect", graphs["k3"], "-k", "3", "--seed", "random", "--format", "json"])
    assert isinstance(json.loads(capsys.readouterr().out)["seed"], int)


def test_format_error_exit(graphs, capsys):
    assert main(["detect", graphs["bad"], "-k", "2"]) == 2
    assert "line 3" in capsys.readouterr().err


def test_k_too_large(graphs, capsys):
    assert main(["detect", graphs["k3"], "-k", "70"]) == 2
    assert "62" in capsys.readouterr().err


def test_usage_errors(graphs, tmp_path):
    for argv in ([], ["detect", graphs["k3"]], ["detect", graphs["k3"], "-k", "0"], ["detect", graphs["k3"], "-k", "2", "--seed", "x"]):
        with pytest.raises(SystemExit) as err:
            main(argv)
        assert err.value.code == 2
    assert main(["detect", str(tmp_path / "missing.txt"), "-k", "2"]) == 2


def test_extraction_failure_exit(graphs, monkeypatch):
    import kpath.paths

    monkeypatch.setattr(kpath.paths, "held_karp_path", lambda g, k: None)
    assert main(["find", graphs["k3"], "-k", "3"]) == 3


def test_selftest():
    assert all(ok for _, ok in selftest_checks())
    assert main(["selftest"]) == 0


def test_bench_small(capsys):
    g, rows = bench_rows("grid", 12, ks=range(3, 6), repeats=2, rate_trials=8)
    assert [r["k"] for r in rows] == [3, 4, 5]
    assert all(r["median_s"] > 0 and 0 <= r["trial_rate"] <= 1 for r in rows)
    assert main(["bench", "--kind", "hampath", "-n", "10", "--k-min", "3", "--k-max", "4", "--repeats", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1].split() == ["k", "median_s", "trial_rate", "log2_ratio"]
    assert len(out) == 4


def test_module_entry_point(graphs):
    res = subprocess.run([sys.executable, "-m", "kpath", "find", graphs["k3"], "-k", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert sorted(map(int, res.stdout.split())) == [1, 2, 3]
