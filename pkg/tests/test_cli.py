"""End-to-end tests of the command line through click's CliRunner."""

import json

import pytest
from click.testing import CliRunner

from src import __version__
from src.cli import main
from src.scenario.report import REPORT_DIR_ENV

VIOLATING = ["--field", "GF(5)", "--bundle", "O(3) + O(2)",
             "-s", "s^3, 0", "-s", "t^3, 0", "-s", "0, s^2", "-s", "0, t^2"]


@pytest.fixture
def runner():
    return CliRunner()


def _json(result) -> dict:
    return json.loads(result.stdout)


class TestSystemCommands:
    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_dsb_json(self, runner):
        result = runner.invoke(main, ["--json", "dsb", "--bundle", "O(3)", "--random", "4"])
        assert result.exit_code == 0
        payload = _json(result)
        assert payload["data"]["dual_span"]["degrees"] == [-1, -1, -1]
        assert payload["timing_seconds"] is None
        assert payload["version"] == __version__

    def test_linstab_semistable(self, runner):
        result = runner.invoke(main, ["linstab", "--field", "GF(2)", "--bundle", "O(3)",
                                      "--random", "4"])
        assert result.exit_code == 0

    def test_linstab_violation(self, runner):
        result = runner.invoke(main, ["--json", "linstab", *VIOLATING])
        assert result.exit_code == 3
        assert _json(result)["outcome"] == "violation-found"

    def test_sampled_evidence_only(self, runner):
        result = runner.invoke(main, ["linstab", "--bundle", "O(3)", "--random", "4",
                                      "--samples", "5"])
        assert result.exit_code == 2

    def test_butler_audit(self, runner):
        result = runner.invoke(main, ["butler-audit", "--bundle", "O(2)",
                                      "-s", "s^2", "-s", "s*t", "-s", "t^2"])
        assert result.exit_code == 0

    def test_timing_flag(self, runner):
        result = runner.invoke(main, ["--json", "--timing", "dsb", "--bundle", "O(1)",
                                      "--random", "2"])
        assert _json(result)["timing_seconds"] is not None


class TestInputErrors:
    @pytest.mark.parametrize("args", [
        ["dsb", "--bundle", "O(3)"],
        ["dsb", "--field", "GF(4)", "--bundle", "O(1)", "--random", "2"],
        ["dsb", "--bundle", "O(2)", "-s", "s^2", "-s", "s*t"],
        ["linstab", "--bundle", "O(3)", "--random", "4", "--exhaustive"],
        ["paper-verify", "thm-9.9"],
        ["paper-verify", "exa-5.6", "--param", "r"],
        ["paper-verify", "thm-5.18", "--n", "3"],
    ])
    def test_exit_four(self, runner, args):
        assert runner.invoke(main, args).exit_code == 4

    def test_resource_guard(self, runner):
        result = runner.invoke(main, ["--max-n", "3", "linstab", *VIOLATING, "--exhaustive"])
        assert result.exit_code == 5


class TestReplaysAndAudits:
    def test_paper_verify_numeric(self, runner):
        result = runner.invoke(main, ["--json", "paper-verify", "exa-5.6"])
        assert result.exit_code == 0
        payload = _json(result)
        assert payload["replay"] == "exa-5.6"
        assert payload["audits"][0]["passed"]

    def test_paper_verify_param(self, runner):
        result = runner.invoke(main, ["--json", "paper-verify", "exa-5.8",
                                      "--param", "d=10", "--g", "2"])
        assert result.exit_code == 0
        assert _json(result)["audits"][0]["params"]["d"] == 10

    def test_audit_all_report_directory(self, runner, tmp_path):
        result = runner.invoke(main, ["audit-all", "--grid", "quick",
                                      "--report", f"{tmp_path}/reports/"])
        assert result.exit_code == 0
        assert (tmp_path / "reports" / "audit-all-0.json").exists()
        assert (tmp_path / "reports" / "audit-all-0.txt").exists()

    def test_report_env(self, runner, tmp_path, monkeypatch):
        monkeypatch.setenv(REPORT_DIR_ENV, str(tmp_path))
        result = runner.invoke(main, ["paper-verify", "cor-5.15", "--seed", "2"])
        assert result.exit_code == 0
        assert (tmp_path / "paper-verify-cor-5.15-2.json").exists()


class TestRunScenario:
    def test_run_file(self, runner, tmp_path):
        path = tmp_path / "pencil.scn"
        path.write_text("command: dsb\nbundle: O(1)\nsections:\n  - s\n  - t\nreport: out\n")
        result = runner.invoke(main, ["--json", "run", str(path)],
                               env={REPORT_DIR_ENV: str(tmp_path)})
        assert result.exit_code == 0
        assert _json(result)["data"]["dual_span"]["degrees"] == [-1]
        assert (tmp_path / "out.json").read_text() == result.stdout

    def test_bad_file(self, runner, tmp_path):
        path = tmp_path / "bad.scn"
        path.write_text("command: dsb\ncolour: red\n")
        result = runner.invoke(main, ["run", str(path)])
        assert result.exit_code == 4
        assert "colour" in result.output
