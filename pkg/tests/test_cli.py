"""CLI tests: subcommands, exit codes, file formats, determinism."""

import json
from math import pi

import numpy as np
import pytest

from permwalk.cli import main
from permwalk.dynamics import WalkResult, return_prob_1fermion, marked_p11


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -------------------------------------------------------------------- spectrum

def test_spectrum_hopping_with_analytic(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--family", "hopping",
                           "--n", "4", "--k", "2")
    assert code == 0
    data = json.loads(out)
    levels = {round(l["e"], 6): l["mult"] for l in data["levels"]}
    assert levels == {2.0: 3, -2.0: 3}
    analytic = {l["e"]: l["mult"] for l in data["analytic"]}
    assert analytic == {2.0: 3, -2.0: 3}


def test_spectrum_two_sites(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--family", "hopping",
                           "--n", "2", "--k", "1")
    assert code == 0
    levels = {round(l["e"], 6): l["mult"] for l in json.loads(out)["levels"]}
    assert levels == {1.0: 1, -1.0: 1}


def test_spectrum_xxx_spin(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--family", "xxx_spin",
                           "--n", "3", "--down", "1")
    assert code == 0
    levels = {round(l["e"], 6): l["mult"] for l in json.loads(out)["levels"]}
    assert levels == {3.0: 1, 0.0: 2}


def test_spectrum_class_sum_by_p(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--family", "class_sum",
                           "--n", "4", "--k", "1", "--p", "2")
    assert code == 0
    levels = {round(l["e"], 6): l["mult"] for l in json.loads(out)["levels"]}
    assert levels == {6.0: 1, 2.0: 3}  # hopping + C(3,2): {3+3, -1+3}


def test_spectrum_usage_errors(capsys):
    assert run_cli(capsys, "spectrum", "--family", "nope", "--n", "3", "--k", "1")[0] == 2
    assert run_cli(capsys, "spectrum", "--family", "hopping")[0] == 2
    assert run_cli(capsys, "spectrum", "--family", "class_sum", "--n", "4", "--k", "1")[0] == 2


def test_spectrum_overflow_is_reported(capsys, monkeypatch):
    monkeypatch.setenv("PERMWALK_MAX_DIM", "3")
    code, _, err = run_cli(capsys, "spectrum", "--family", "hopping",
                           "--n", "4", "--k", "2")
    assert code == 1 and "exceeds cap" in err


# ------------------------------------------------------------------------ walk

def test_walk_two_site_cosine(capsys, tmp_path):
    out_file = tmp_path / "walk.csv"
    code, _, _ = run_cli(capsys, "walk", "--family", "hopping", "--n", "2",
                         "--initial", "1", "--t-start", "0",
                         "--t-end", str(2 * pi), "--points", "80",
                         "--output", str(out_file))
    assert code == 0
    result = WalkResult.from_csv(out_file.read_text())
    assert result.labels == ["1", "2"]
    assert np.max(np.abs(result.column("1") - np.cos(result.grid.times) ** 2)) < 1e-10


def test_walk_output_is_deterministic(capsys):
    args = ("walk", "--family", "hopping", "--n", "6", "--initial", "2,4",
            "--points", "50")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_walk_closed_form_footer(capsys):
    code, out, _ = run_cli(capsys, "walk", "--family", "hopping", "--n", "5",
                           "--initial", "1,2", "--points", "30", "--closed-form")
    assert code == 0
    footer = [ln for ln in out.splitlines() if ln.startswith("#")]
    assert len(footer) == 1 and "deviation" in footer[0]
    deviation = float(footer[0].split("=")[1])
    assert deviation < 1e-10
    assert WalkResult.from_csv(out).probs.shape == (30, 10)


def test_walk_closed_form_single_fermion(capsys):
    code, out, _ = run_cli(capsys, "walk", "--family", "hopping", "--n", "10",
                           "--initial", "5", "--points", "40", "--closed-form")
    assert code == 0
    result = WalkResult.from_csv(out)
    assert np.max(np.abs(result.column("5")
                         - return_prob_1fermion(10, result.grid.times))) < 1e-12


def test_walk_rejects_bad_initial(capsys):
    base = ("walk", "--family", "hopping", "--n", "4")
    assert run_cli(capsys, *base, "--initial", "1,1")[0] == 2
    assert run_cli(capsys, *base, "--initial", "0,2")[0] == 2
    assert run_cli(capsys, *base, "--initial", "3,5")[0] == 2
    assert run_cli(capsys, *base)[0] == 2  # missing entirely
    assert run_cli(capsys, *base, "--initial", "1,2", "--k", "1")[0] == 2


def test_walk_shared_targets(capsys):
    code, out, _ = run_cli(capsys, "walk", "--family", "hopping", "--n", "6",
                           "--initial", "1,2", "--points", "10",
                           "--targets", "shared")
    assert code == 0
    result = WalkResult.from_csv(out)
    assert "1|2" in result.labels
    for label in result.labels:
        sites = {int(s) for s in label.split("|")}
        assert len(sites & {1, 2}) >= 1
    assert np.max(np.abs(result.row_sums() - 1.0)) < 1e-10


def test_walk_explicit_targets_and_unknown_label(capsys):
    code, out, _ = run_cli(capsys, "walk", "--family", "hopping", "--n", "6",
                           "--initial", "1,2", "--points", "10",
                           "--targets", "1|2,3|4")
    assert code == 0
    assert WalkResult.from_csv(out).labels == ["1|2", "3|4"]
    assert run_cli(capsys, "walk", "--family", "hopping", "--n", "6",
                   "--initial", "1,2", "--points", "10",
                   "--targets", "9|9")[0] == 2


def test_walk_json_format(capsys):
    code, out, _ = run_cli(capsys, "walk", "--family", "ring", "--n", "5",
                           "--initial", "3", "--points", "12",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == {"family": "ring", "N": 5, "k": 1}
    assert len(payload["probs"]) == 12


def test_walk_config_file_with_flag_override(capsys, tmp_path):
    cfg = {
        "model": {"family": "hopping", "N": 6, "k": 2},
        "initial": [1, 2],
        "grid": {"t_start": 0, "t_end": 10, "n_points": 25},
        "targets": "all",
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run_cli(capsys, "walk", "--config", str(path))
    assert code == 0
    result = WalkResult.from_csv(out)
    assert result.grid.n_points == 25 and len(result.labels) == 15
    # a flag overrides the config grid
    code, out, _ = run_cli(capsys, "walk", "--config", str(path), "--points", "7")
    assert code == 0
    assert WalkResult.from_csv(out).grid.n_points == 7


# ---------------------------------------------------------------------- marked

def test_marked_curves(capsys):
    code, out, _ = run_cli(capsys, "marked", "--n", "4",
                           "--betas", "0,0.05,1", "--points", "60")
    assert code == 0
    result = WalkResult.from_csv(out)
    assert result.labels == ["p11@beta=0", "p22@beta=0", "p11@beta=0.05",
                             "p22@beta=0.05", "p11@beta=1", "p22@beta=1"]
    assert np.max(np.abs(result.column("p11@beta=0") - 1.0)) == 0.0
    ts = result.grid.times
    assert np.max(np.abs(result.column("p11@beta=1")
                         - return_prob_1fermion(4, ts))) < 1e-10
    assert np.max(np.abs(result.column("p11@beta=0.05")
                         - np.asarray(marked_p11(4, 0.05, ts)))) < 1e-12


def test_marked_requires_n(capsys):
    assert run_cli(capsys, "marked", "--betas", "0.5")[0] == 2


# ---------------------------------------------------------------------- verify

def test_verify_quick_passes_under_ten_seconds(capsys):
    import time

    t0 = time.perf_counter()
    code, out, _ = run_cli(capsys, "verify", "--level", "quick")
    elapsed = time.perf_counter() - t0
    assert code == 0
    assert elapsed < 10.0
    lines = [ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert len(lines) == 20
    assert all(ln.startswith("PASS") for ln in lines)
    assert all("max residual" in ln for ln in lines)


# ----------------------------------------------------------------------- misc

def test_help_and_version(capsys):
    assert run_cli(capsys, "--version")[0] == 0
    assert run_cli(capsys, "--help")[0] == 0


def test_unknown_command(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2
