import shutil
from pathlib import Path

import pytest

from relaydeploy.cli import main
from relaydeploy.harness import CSV_HEADER

PLANS = Path(__file__).resolve().parents[1] / "plans"


def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == 1


def test_bad_option_is_usage_error(capsys):
    assert main(["plot", "x.csv", "--kind", "nope"]) == 1


def test_missing_plan_is_io_error(tmp_path):
    assert main(["run", str(tmp_path / "none.ini")]) == 3


def test_bad_plan_is_infeasible(tmp_path):
    p = tmp_path / "bad.ini"
    p.write_text("[plan]\nrepetitions = 1\n")
    assert main(["run", str(p)]) == 2
    p.write_text("[nonsense]\nx = 1\n")
    assert main(["run", str(p)]) == 2


def test_run_summarize_plot(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("RELAYDEPLOY_OUTPUT_DIR", str(tmp_path))
    assert main(["run", str(PLANS / "smoke.ini")]) == 0
    rows = tmp_path / "rows.csv"
    assert rows.read_text().splitlines()[0] == ",".join(CSV_HEADER)
    assert main(["summarize", str(rows)]) == 0
    assert "t_r" in capsys.readouterr().out
    assert main(["summarize", str(rows), "--out", str(tmp_path / "s.csv")]) == 0
    for kind in ("lifetime_vs_size", "connectivity_vs_size", "convergence", "lifetime_vs_load"):
        out = tmp_path / f"{kind}.txt"
        assert main(["plot", str(rows), "--kind", kind, "--out", str(out)]) == 0
        assert out.read_text().startswith(f"# kind: {kind}")


def test_plot_without_traces_names_gap(tmp_path, monkeypatch):
    monkeypatch.setenv("RELAYDEPLOY_OUTPUT_DIR", str(tmp_path))
    assert main(["run", str(PLANS / "smoke.ini")]) == 0
    lone = tmp_path / "lone"
    lone.mkdir()
    shutil.copy(tmp_path / "rows.csv", lone / "rows.csv")
    assert main(["plot", str(lone / "rows.csv"), "--kind", "convergence"]) == 2


def test_verify_paper_stats_reports_errata(capsys):
    code = main(["verify-paper-stats"])
    out = capsys.readouterr().out
    assert code == 4
    assert "71/75" in out and out.count("MISMATCH") == 4


def test_backbone_command(capsys):
    assert main(["backbone", str(PLANS / "layout.ini")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "BS 4 4 0" and sum(l.startswith("CH") for l in lines) == 9


def test_plan_file_matches_defaults():
    from relaydeploy.config import load_plan
    from relaydeploy.harness import ExperimentPlan

    assert load_plan(PLANS / "desk.ini") == ExperimentPlan()
