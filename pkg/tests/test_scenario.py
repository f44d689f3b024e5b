"""Tests for scenario parsing, replays, the runner, and report emission."""

import json
import textwrap

import pytest

from src import __version__
from src.core.errors import ScenarioError
from src.scenario.model import Command, Scenario
from src.scenario.parser import load_scenario, parse_scenario, scenario_to_text
from src.scenario.replays import REPLAYS, ReplayContext, run_replay
from src.scenario.report import REPORT_DIR_ENV, ExitCode, Outcome, emit_report
from src.scenario.runner import run
from src.stability.config import StabilityConfig


def _scenario(text: str) -> Scenario:
    return parse_scenario(textwrap.dedent(text))


RANDOM_LINSTAB = """\
    command: linstab
    field: GF(5)
    bundle: O(3) + O(4)
    sections: random 4
    seed: 1
"""

CUBIC_DSB = """\
    # the complete cubic series
    command: dsb
    bundle: O(3)
    sections:
      - s^3
      - s^2*t
      - s*t^2
      - t^3
"""


class TestParser:
    def test_random_sections(self):
        sc = _scenario(RANDOM_LINSTAB)
        assert sc.command == Command.LINSTAB
        assert sc.field == "GF(5)"
        assert sc.bundle == "O(4) + O(3)"
        assert sc.random_count == 4
        assert sc.seed == 1

    def test_explicit_sections(self):
        sc = _scenario(CUBIC_DSB)
        assert sc.sections == ("s^3", "s^2*t", "s*t^2", "t^3")
        assert sc.build_system().type_tuple == (1, 3, 4)

    @pytest.mark.parametrize("text", [RANDOM_LINSTAB, CUBIC_DSB])
    def test_round_trip(self, text):
        sc = _scenario(text)
        assert parse_scenario(scenario_to_text(sc)) == sc

    def test_round_trip_replay(self):
        sc = _scenario("""\
            command: paper-verify
            replay: thm-5.18
            params: e=4
            prime: 3
        """)
        assert sc.params == {"e": 4}
        assert "params: e=4" in scenario_to_text(sc)
        assert parse_scenario(scenario_to_text(sc)) == sc

    def test_unknown_key(self):
        with pytest.raises(ScenarioError) as exc:
            _scenario("command: dsb\ncolour: red\n")
        assert (exc.value.line, exc.value.column) == (2, 1)

    def test_duplicate_key(self):
        with pytest.raises(ScenarioError, match="duplicate") as exc:
            _scenario("command: dsb\nseed: 1\nseed: 2\n")
        assert exc.value.line == 3

    def test_bad_integer(self):
        with pytest.raises(ScenarioError) as exc:
            _scenario("command: audit-all\nseed: many\n")
        assert (exc.value.line, exc.value.column) == (2, 7)

    def test_validation_error_points_at_value(self):
        with pytest.raises(ScenarioError) as exc:
            _scenario("command: dsb\nfield: GF(4)\nbundle: O(1)\nsections: random 2\n")
        assert (exc.value.line, exc.value.column) == (2, 8)

    def test_bad_form_column(self):
        text = "command: dsb\nbundle: O(2)\nsections:\n  - s^2 + s*t\n  - s^2 + t\n"
        with pytest.raises(ScenarioError) as exc:
            parse_scenario(text)
        assert (exc.value.line, exc.value.column) == (5, 9)

    def test_unexpected_indentation(self):
        with pytest.raises(ScenarioError, match="indentation") as exc:
            _scenario("command: audit-all\n  grid: quick\n")
        assert exc.value.line == 2

    def test_empty_sections(self):
        with pytest.raises(ScenarioError, match="empty"):
            _scenario("command: dsb\nbundle: O(1)\nsections:\nseed: 1\n")

    def test_load_file(self, tmp_path):
        path = tmp_path / "cubic.scn"
        path.write_text(textwrap.dedent(CUBIC_DSB))
        assert load_scenario(path) == _scenario(CUBIC_DSB)


class TestScenarioModel:
    def test_component_count(self):
        with pytest.raises(ValueError, match="components"):
            Scenario(command="dsb", bundle="O(1) + O(2)", sections=("s",))

    def test_needs_bundle(self):
        with pytest.raises(ValueError, match="needs a bundle"):
            Scenario(command="linstab", random_count=3)

    def test_sections_or_random(self):
        with pytest.raises(ValueError):
            Scenario(command="dsb", bundle="O(1)", sections=("s", "t"), random_count=2)

    def test_replay_params(self):
        with pytest.raises(ValueError, match="takes params"):
            Scenario(command="paper-verify", replay="thm-5.18", params={"t": 1})
        with pytest.raises(ValueError):
            Scenario(command="paper-verify", replay="thm-9.9")
        with pytest.raises(ValueError):
            Scenario(command="dsb", bundle="O(1)", random_count=2, replay="thm-5.18")

    def test_hyperelliptic_base(self):
        sc = Scenario(command="dsb", base="hyperelliptic(10, 2)", random_count=3)
        assert sc.splitting.degrees == (5,)
        assert sc.hyperelliptic.g == 10
        with pytest.raises(ValueError):
            Scenario(command="dsb", base="hyperelliptic(10, 2)", bundle="O(4)", random_count=3)
        with pytest.raises(ValueError):
            Scenario(command="dsb", base="hyperelliptic(7, 2)", random_count=3)

    def test_every_replay_has_defaults(self):
        assert set(REPLAYS) == {"thm-5.18", "thm-4.3", "prop-5.11", "cor-5.15", "prop-5.14",
                                "exa-5.6", "exa-5.8", "exa-5.9"}


class TestRunner:
    def test_dsb(self):
        report = run(_scenario(CUBIC_DSB))
        assert report.outcome == Outcome.OK
        assert report.data["dual_span"]["degrees"] == [-1, -1, -1]
        assert report.certificates == []
        assert report.version == __version__

    def test_violation_exit_code(self):
        sc = Scenario(command="linstab", field="GF(5)", bundle="O(3) + O(2)",
                      sections=("s^3, 0", "t^3, 0", "0, s^2", "0, t^2"))
        report = run(sc)
        assert report.outcome == Outcome.VIOLATION_FOUND
        assert report.exit_code == ExitCode.VIOLATION_FOUND == 3
        assert report.certificates[0]["relation"] == "<"

    def test_sampled_is_evidence_only(self):
        sc = Scenario(command="linstab", bundle="O(3)", random_count=4, samples=10)
        report = run(sc)
        assert report.outcome == Outcome.EVIDENCE_ONLY
        assert report.exit_code == 2

    def test_butler(self):
        report = run(_scenario(CUBIC_DSB.replace("command: dsb", "command: butler-audit")))
        assert report.outcome == Outcome.OK
        assert report.data["butler"]["all_passed"]

    def test_hyperelliptic_pullback_data(self):
        report = run(Scenario(command="dsb", base="hyperelliptic(10, 2)", random_count=3))
        assert report.data["pullback"]["d"] == 10
        assert report.data["hyperelliptic"]["g"] == 10

    def test_audit_all_quick(self):
        report = run(Scenario(command="audit-all", grid="quick"))
        assert report.outcome == Outcome.OK
        assert report.data["discrepancy_census"]["exa-5.6:slope_variant"] == 1

    def test_json_is_byte_stable(self):
        sc = _scenario(RANDOM_LINSTAB)
        first, second = run(sc), run(sc)
        assert first.to_json() == second.to_json()
        payload = json.loads(first.to_json())
        assert payload["timing_seconds"] is None
        assert payload["seeds"]["seed"] == 1
        assert json.loads(first.to_json(include_timing=True))["timing_seconds"] is not None


class TestReplays:
    def _run(self, replay_id, **params):
        ctx = ReplayContext(seed=0, params=params, config=StabilityConfig())
        return run_replay(replay_id, ctx)

    def test_genus_two(self):
        result = self._run("exa-5.6")
        assert result.outcome == Outcome.OK
        assert [r.name for r in result.audits[0].discrepancies] == ["slope_variant"]

    def test_elliptic_runs_both_cases(self):
        result = self._run("prop-5.14")
        assert [a.params["e"] for a in result.audits] == [2, 3]
        assert self._run("prop-5.14", e=3).audits[0].params == {"e": 3}

    def test_bielliptic(self):
        assert self._run("cor-5.15").outcome == Outcome.OK

    def test_rank_two_criterion(self):
        ctx = ReplayContext(seed=0, params={}, config=StabilityConfig(), samples=2)
        result = run_replay("prop-5.11", ctx)
        assert result.outcome == Outcome.OK
        assert result.data["violations_found"] == 2

    @pytest.mark.slow
    def test_rank_two_criterion_every_sample_violates(self):
        ctx = ReplayContext(seed=0, params={}, config=StabilityConfig(), prime=5, samples=20)
        result = run_replay("prop-5.11", ctx)
        assert result.outcome == Outcome.OK
        assert len(result.data["samples"]) == 20
        assert result.data["violations_found"] == 20
        assert all(r["linear_stability"] == "unstable" for r in result.data["samples"])
        assert all(r["consistent"] for r in result.data["samples"])

    def test_hyperelliptic(self):
        result = self._run("thm-4.3")
        assert result.outcome == Outcome.OK
        assert result.audits[0].discrepancies[0].name == "stated_section_count"
        assert result.data["generic_kernel_count"] >= 9

    @pytest.mark.slow
    def test_rank_two_counterexample(self):
        ctx = ReplayContext(seed=1, params={}, config=StabilityConfig(), prime=5, samples=20)
        result = run_replay("thm-5.18", ctx)
        assert result.outcome == Outcome.OK
        assert result.data["expected_subspaces"] == 1118
        samples = result.data["samples"]
        assert len(samples) == 20
        assert all(r["subspaces_examined"] == 1118 for r in samples)
        assert all(len(r["dual_span"]) == 2 and sum(r["dual_span"]) == -7 for r in samples)
        assert result.data["unstable_dual_span"] == 20
        assert result.data["linearly_stable"] >= 1
        witness = result.data["witness_index"]
        assert witness is not None
        assert samples[witness]["linear_stability"] == "stable"
        assert samples[witness]["violations"] == 0
        assert result.verdicts[0]["index"] == witness
        assert all(r["dual_span_verdict"] == "unstable" for r in result.data["samples"])


class TestEmitReport:
    def test_stem(self, tmp_path):
        report = run(_scenario(CUBIC_DSB))
        text_path, json_path = emit_report(report, tmp_path / "cubic")
        assert text_path.name == "cubic.txt"
        assert json.loads(json_path.read_text())["command"] == "dsb"
        assert "scenario:" in text_path.read_text()

    def test_directory_keeps_dotted_replay_ids(self, tmp_path):
        report = run(Scenario(command="paper-verify", replay="cor-5.15", seed=3))
        text_path, json_path = emit_report(report, tmp_path)
        assert text_path.name == "paper-verify-cor-5.15-3.txt"
        assert json_path.name == "paper-verify-cor-5.15-3.json"

    def test_rewrite_is_identical(self, tmp_path):
        report = run(_scenario(CUBIC_DSB))
        _, json_path = emit_report(report, tmp_path / "a.json")
        first = json_path.read_bytes()
        emit_report(report, tmp_path / "a")
        assert json_path.read_bytes() == first

    def test_env_directory(self, tmp_path, monkeypatch):
        monkeypatch.setenv(REPORT_DIR_ENV, str(tmp_path))
        text_path, _ = emit_report(run(_scenario(CUBIC_DSB)), "nested/run")
        assert text_path == tmp_path / "nested" / "run.txt"
        assert text_path.exists()

    def test_trailing_slash_creates_directory(self, tmp_path):
        report = run(Scenario(command="paper-verify", replay="cor-5.15", seed=4))
        text_path, json_path = emit_report(report, f"{tmp_path}/fresh/reports/")
        assert (tmp_path / "fresh" / "reports").is_dir()
        assert text_path == tmp_path / "fresh" / "reports" / "paper-verify-cor-5.15-4.txt"
        assert json.loads(json_path.read_text())["replay"] == "cor-5.15"

    def test_trailing_slash_under_env_directory(self, tmp_path, monkeypatch):
        monkeypatch.setenv(REPORT_DIR_ENV, str(tmp_path))
        text_path, _ = emit_report(run(_scenario(CUBIC_DSB)), "nested/")
        assert text_path == tmp_path / "nested" / "dsb-0.txt"
        assert text_path.exists()
