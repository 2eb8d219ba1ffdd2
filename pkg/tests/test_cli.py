"""Command-line interface tests: exit codes, outputs and the gain printer."""

import json
from pathlib import Path

import pytest

from lockupsim.cli import main


def test_run_short_scenario(tmp_path, capsys):
    cfg = tmp_path / "short.ini"
    cfg.write_text("[sim]\nt_max = 0.001\n")
    out = tmp_path / "out"
    assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
    csv_path = out / "short.csv"
    assert csv_path.exists()
    assert (out / "short.manifest.json").exists()
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 12  # header + 11 samples covering [0, t_max]


def test_run_validation_error_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[attack]\nvariant = prop2\nt_c = 1.5\n")
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "attack" in err


def test_run_missing_file(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.ini"),
                 "--out", str(tmp_path)]) == 1


def test_gains_default_config_values(capsys):
    assert main(["gains"]) == 0
    out = capsys.readouterr().out
    assert "mu_max" in out
    # defaults: dry road, auto v_min = 0.3 * 30
    assert "9.000000" in out


def test_gains_match_worked_example(tmp_path, capsys):
    cfg = tmp_path / "g.ini"
    cfg.write_text("[attack]\nv_min_assumed = 10\n")
    assert main(["gains", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    k_line = next(l for l in out.splitlines() if l.startswith("k  ("))
    ka_line = next(l for l in out.splitlines() if l.startswith("k_a"))
    k = float(k_line.split(">=")[1].split("#")[0])
    ka = float(ka_line.split(">=")[1].split("#")[0])
    assert k == pytest.approx(1.148, abs=2e-3)
    assert ka == pytest.approx(18.36, abs=2e-2)


@pytest.mark.filterwarnings("ignore:deadtime 0.015 s rounded")
def test_batch_five_attacks(tmp_path, capsys):
    out = tmp_path / "batch"
    assert main(["batch", "--suite", "five-attacks", "--road", "dry",
                 "--outdir", str(out), "--dt", "2e-3"]) == 0
    csvs = sorted(p.name for p in out.glob("*.csv"))
    assert csvs == [
        "constant_torque.csv", "phi_1.csv", "phi_1_ndob.csv",
        "phi_p.csv", "phi_p_ndob.csv",
    ]
    manifests = list(out.glob("*.manifest.json"))
    assert len(manifests) == 5
    assert (out / "summary.txt").exists()
    stdout = capsys.readouterr().out
    assert "phi_p_ndob" in stdout
    # NDOB rows cross the lockup threshold, others never do (coarse-step
    # smoke variant; the full-resolution pattern is in the acceptance suite)
    for name in ("phi_p_ndob", "phi_1_ndob"):
        with open(out / f"{name}.manifest.json") as fh:
            assert json.load(fh)["metrics"]["success"] is True
    for name in ("constant_torque", "phi_p", "phi_1"):
        with open(out / f"{name}.manifest.json") as fh:
            assert json.load(fh)["metrics"]["success"] is False


def test_batch_unknown_suite(tmp_path):
    assert main(["batch", "--suite", "six-attacks",
                 "--outdir", str(tmp_path)]) == 1


def test_batch_manifest_labels(tmp_path):
    out = tmp_path / "b"
    assert main(["batch", "--road", "wet", "--outdir", str(out),
                 "--dt", "5e-3"]) == 0
    with open(out / "phi_1_ndob.manifest.json") as fh:
        man = json.load(fh)
    assert man["label"] == "phi_1 + NDOB"
    assert man["config"]["road"]["preset"] == "wet_asphalt"
    assert man["ndob_enabled"] is True
