from src.scenario.model import Command, Scenario
from src.scenario.parser import load_scenario, parse_scenario, scenario_to_text
from src.scenario.replays import REPLAYS, Replay, ReplayContext, ReplayResult, run_replay
from src.scenario.report import (
    REPORT_DIR_ENV,
    ExitCode,
    Outcome,
    Report,
    SeedProvenance,
    emit_report,
    resolve_report_path,
)
from src.scenario.runner import run

__all__ = [
    "Command", "Scenario", "parse_scenario", "load_scenario", "scenario_to_text",
    "REPLAYS", "Replay", "ReplayContext", "ReplayResult", "run_replay",
    "ExitCode", "Outcome", "Report", "SeedProvenance", "REPORT_DIR_ENV",
    "emit_report", "resolve_report_path", "run",
]
