"""CLI: schema, exit codes, determinism, output formats."""

import json

import jsonschema
import pytest

import argshift.cli as cli
from argshift.cli import JSONSCHEMA, run
from argshift.verifier import RankReport, TrialRecord

VERIFY = ["verify", "--type", "A", "--rank", "2", "--trials", "3",
          "--seed", "42"]


def test_verify_report_validates_against_schema(capsys):
    assert run(VERIFY) == 0
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, JSONSCHEMA)
    assert report["verdict"] == "pass"
    assert report["algebra"] == {"type": "A", "rank": 2, "n": 8, "r": 2,
                                 "ell": 5}
    assert report["elapsed_ms"] is None
    assert len(report["trials"]) == 4  # 3 + degenerate configuration
    assert list(report) == ["config", "algebra", "trials", "verdict",
                            "elapsed_ms", "version"]


def test_reports_byte_identical_across_runs_and_jobs(tmp_path):
    p1, p2, p3 = (tmp_path / f"r{i}.json" for i in range(3))
    assert run(VERIFY + ["--output", str(p1)]) == 0
    assert run(VERIFY + ["--output", str(p2)]) == 0
    assert run(VERIFY + ["--jobs", "4", "--output", str(p3)]) == 0
    b1, b2, b3 = p1.read_bytes(), p2.read_bytes(), p3.read_bytes()
    assert b1 == b2 == b3


def test_csv_flattening(tmp_path, capsys):
    out = tmp_path / "trials.csv"
    assert run(VERIFY + ["--csv", "--output", str(out)]) == 0
    text = out.read_text()
    assert capsys.readouterr().out == text
    lines = text.strip().splitlines()
    assert lines[0] == "trial,rank,expected,drift,annihilator_residual"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "3" and first[2] == "3"


def test_timing_flag_adds_wall_time(capsys):
    assert run(VERIFY + ["--timing"]) == 0
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, JSONSCHEMA)
    assert isinstance(report["elapsed_ms"], int)


def test_exact_mode_campaign(capsys):
    argv = ["verify", "--type", "A", "--rank", "1", "--trials", "2",
            "--seed", "7", "--mode", "exact"]
    assert run(argv) == 0
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, JSONSCHEMA)
    assert all(t["drift"] == 0 for t in report["trials"])


@pytest.mark.parametrize("argv", [
    ["verify", "--type", "D", "--rank", "3"],
    ["verify", "--type", "A", "--rank", "9"],
    ["verify", "--type", "A", "--rank", "2", "--trials", "0"],
    ["verify", "--type", "A", "--rank", "2", "--tolerance", "0.5"],
    ["verify", "--type", "A", "--rank", "2", "--tolerance", "0"],
    ["verify", "--type", "A", "--rank", "2", "--shift", "weird"],
    ["probe-singular", "--type", "E", "--rank", "2"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2
    capsys.readouterr()


def test_failed_verdict_exits_1(monkeypatch, capsys):
    trial = TrialRecord(digest="00", restricted_rank=2, ambient_rank=5,
                        annihilator_residual=0.0, drift=0.0, expected=3)
    fake = RankReport(type_label="A", rank=2, n=8, r=2, ell=5,
                      shift_kind="semisimple", orbit_kind="semisimple",
                      trials=(trial,), seed=1, tolerance=1e-8, mode="float",
                      passed=False, elapsed_s=0.0)
    monkeypatch.setattr(cli, "verify_completeness",
                        lambda *a, **k: fake)
    assert run(["verify", "--type", "A", "--rank", "2"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "fail"
    jsonschema.validate(report, JSONSCHEMA)


def test_seed_env_override(monkeypatch, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "--type", "A", "--rank", "1", "--trials", "2"]
    monkeypatch.setenv("ARGSHIFT_SEED", "9")
    assert run(argv + ["--output", str(p1)]) == 0
    monkeypatch.delenv("ARGSHIFT_SEED")
    assert run(argv + ["--seed", "9", "--output", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    monkeypatch.setenv("ARGSHIFT_SEED", "not-a-number")
    assert run(argv) == 2


def test_sl2_subcommand_output(capsys):
    assert run(["sl2", "--type", "A", "--rank", "2"]) == 0
    out = capsys.readouterr().out
    assert "c[(1, 0)] = 2" in out and "c[(0, 1)] = 2" in out
    assert "PASS (exact)" in out
    assert "inside b+: PASS" in out


def test_slice_zero_targets_xi(capsys):
    assert run(["slice", "--type", "A", "--rank", "2", "--zero",
                "--seed", "3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["residual"] <= 1e-10
    assert report["xi_deviation"] <= 1e-10
    # complex values serialize as [re, im] pairs
    assert all(len(v) == 2 for v in report["point"])


def test_probe_subcommands(capsys):
    assert run(["probe-singular", "--type", "A", "--rank", "2",
                "--samples", "6", "--seed", "42"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["deficient"] == 6 and rep["passed"]
    assert run(["probe-slice-regularity", "--type", "C", "--rank", "2",
                "--samples", "25", "--seed", "42"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["regular"] == 25


def test_selftest_and_version(capsys):
    assert run(["selftest"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 9  # 8 algebras + the summary line
    assert run(["--version"]) == 0
    assert capsys.readouterr().out.strip() == "0.1.0"
