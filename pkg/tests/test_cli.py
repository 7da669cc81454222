import json
import subprocess
import sys
from pathlib import Path

import pytest

from gvlab.cli import run_cli

HAMMING = str(Path(__file__).parent / "data" / "hamming74.txt")


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_distance_hamming(capsys):
    code, out, _ = run(capsys, "distance", "--matrix", HAMMING)
    assert code == 0
    assert json.loads(out)["d_min"] == 3


def test_oracle_distance(capsys):
    code, out, _ = run(capsys, "oracle-distance", "--matrix", HAMMING, "--check")
    assert code == 0
    assert json.loads(out) == {"n": 7, "k": 4, "d_min": 3}


def test_verify_indicator_example(capsys):
    code, out, _ = run(capsys, "verify-indicator", "--n", "4", "--r", "2", "--d", "3", "--exhaustive")
    assert code == 0
    assert out == "checked 256 matrices, 0 mismatches\n"


def test_stefanescu_example(capsys):
    code, out, _ = run(capsys, "stefanescu", "--poly", "3:1 2:-2 0:1")
    assert code == 0
    assert out.startswith("B3 = 2, largest root ≈ 1.618034")


def test_p_sum_text(capsys):
    code, out, _ = run(capsys, "p-sum", "--n", "3", "--r", "2", "--d", "3", "--format", "text")
    assert code == 0 and out == "P = 54675/8\n"


def test_expand(capsys, tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("2 1 2 1\n1 1\n")
    code, out, _ = run(capsys, "expand", "--matrix", str(path), "--d", "2")
    assert code == 0 and out == "2:1 1:-1 0:1/4\n"


def test_gv_construct_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "gv-construct", "--n", "7", "--d", "3")
    assert code == 0
    path = tmp_path / "g.txt"
    path.write_text(out)
    code, out, _ = run(capsys, "distance", "--matrix", str(path))
    assert json.loads(out)["d_min"] >= 3


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--wmax", "1")
    assert code == 0 and out == "1 0 0\n0 1 0\n0 0 1\n"


def test_gap_and_rhs5t(capsys):
    code, out, _ = run(capsys, "gap", "--n", "1000", "--d", "111", "--format", "json")
    assert code == 0 and json.loads(out)["gap"] <= 0.02
    code, out, _ = run(capsys, "rhs5t", "--n", "3", "--d", "2", "--row", "1 1 1")
    assert code == 0 and float(out) == pytest.approx(0.5849625007, abs=1e-9)


def test_gv_curve_csv(capsys):
    code, out, _ = run(capsys, "gv-curve", "--samples", "5", "--n", "100")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "q,label,n,delta,rate,gap"
    assert sum(1 for ln in lines if ",gv," in ln) == 5


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--poly", "2:1 0:-4", "--format", "json")
    assert code == 0
    assert json.loads(out)["largest_positive_root"] == pytest.approx(2.0, abs=1e-12)


def test_usage_errors(capsys):
    code, _, err = run(capsys, "distance")
    assert code == 1 and err.startswith("ERROR 1: ")
    code, _, err = run(capsys, "no-such-command")
    assert code == 1
    code, _, err = run(capsys, "p-sum", "--n", "0", "--r", "1", "--d", "2")
    assert code == 1
    code, _, err = run(capsys, "distance", "--matrix", "/nonexistent/file")
    assert code == 1
    code, _, err = run(capsys, "gv-construct", "--p", "4", "--n", "4", "--d", "2")
    assert code == 1 and "NonPrimeCharacteristic" in err


def test_size_guard_exit(capsys):
    code, _, err = run(capsys, "distance", "--matrix", HAMMING, "--budget", "3")
    assert code == 2 and err.startswith("ERROR 2: ")


def test_budget_flag_does_not_leak(capsys, monkeypatch):
    monkeypatch.delenv("GVLAB_BUDGET", raising=False)
    run(capsys, "distance", "--matrix", HAMMING, "--budget", "3")
    code, _, _ = run(capsys, "distance", "--matrix", HAMMING)
    assert code == 0


def test_undecomposable_polynomial_exit(capsys):
    code, _, err = run(capsys, "stefanescu", "--poly", "2:-1 0:1")
    assert code == 1 and "OddVariations" in err


def test_counterexample_exit(capsys, monkeypatch):
    from gvlab import verify

    def broken(*args, **kwargs):
        return verify.GreedyCheck(checked=1, failures=[{"n": 2, "d": 2, "q": 2}])

    monkeypatch.setattr(verify, "verify_greedy", broken)
    code, out, err = run(capsys, "verify-greedy")
    assert code == 3
    assert out == "checked 1 constructions, 1 failures\n"
    assert err.startswith("ERROR 3: ")


def test_out_flag(capsys, tmp_path):
    path = tmp_path / "o.json"
    code, out, _ = run(capsys, "distance", "--matrix", HAMMING, "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["d_min"] == 3


SEEDED = [
    ["p-sum", "--n", "3", "--r", "2", "--d", "3", "--method", "mc", "--samples", "3000", "--seed", "9"],
    ["p-sum", "--n", "4", "--r", "2", "--d", "3"],
    ["verify-indicator", "--n", "5", "--r", "2", "--samples", "300", "--seed", "4"],
    ["verify-lemma", "--samples", "300", "--seed", "2", "--format", "json"],
    ["verify-greedy", "--n", "6", "--format", "json"],
]


@pytest.mark.parametrize("argv", SEEDED, ids=lambda a: a[0])
def test_byte_identical_across_runs_and_workers(argv, tmp_path, capsys):
    outputs = []
    for i, workers in enumerate(("1", "1", "4")):
        path = tmp_path / f"out{i}"
        assert run_cli(argv + ["--workers", workers, "--out", str(path)]) == 0
        outputs.append(path.read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[1] == outputs[2]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gvlab", "distance", "--matrix", HAMMING, "--format", "text"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("n=7 k=4 d_min=3")
