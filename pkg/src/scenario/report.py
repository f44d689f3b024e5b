"""Run reports: a human-readable text rendering and a byte-stable JSON document."""

from __future__ import annotations

import json
import logging
import os
from enum import Enum, IntEnum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from src import __version__
from src.utils.seeding import PURPOSES

log = logging.getLogger(__name__)

REPORT_DIR_ENV = "LINSTAB_REPORT_DIR"


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    EVIDENCE_ONLY = 2
    VIOLATION_FOUND = 3
    INPUT_ERROR = 4
    RESOURCE_GUARD = 5


class Outcome(str, Enum):
    OK = "ok"
    CHECK_FAILED = "check-failed"
    EVIDENCE_ONLY = "evidence-only"
    VIOLATION_FOUND = "violation-found"

    @property
    def exit_code(self) -> ExitCode:
        return ExitCode[self.name]


class SeedProvenance(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    seed: int
    scheme: str = "SeedSequence(seed, spawn_key=(crc32(purpose), index))"
    purposes: list[str] = Field(default_factory=lambda: list(PURPOSES))


class Report(BaseModel):
    """Everything a run produced.  Exact rationals are already ``"p/q"`` strings."""

    model_config = ConfigDict(extra="forbid")

    version: str = __version__
    command: str
    replay: str | None = None
    scenario: str
    seeds: SeedProvenance
    outcome: Outcome
    exit_code: int
    verdicts: list[dict] = Field(default_factory=list)
    certificates: list[dict] = Field(default_factory=list)
    audits: list[dict] = Field(default_factory=list)
    data: dict = Field(default_factory=dict)
    summary: list[str] = Field(default_factory=list)
    timing_seconds: float | None = None

    def to_json(self, include_timing: bool = False) -> str:
        payload = self.model_dump(mode="json")
        if not include_timing:
            payload["timing_seconds"] = None
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        title = self.command if self.replay is None else f"{self.command} {self.replay}"
        lines = [
            f"linstab {self.version}: {title}",
            f"outcome: {self.outcome.value} (exit {self.exit_code})",
            f"seed: {self.seeds.seed}",
        ]
        if self.timing_seconds is not None:
            lines.append(f"time: {self.timing_seconds:.2f}s")
        lines.append("")
        lines.extend(self.summary)
        for audit in self.audits:
            lines.append("")
            status = "pass" if audit["passed"] else "FAIL"
            lines.append(f"[{status}] {audit['name']} {audit['params']}")
            for row in audit["rows"]:
                mark = "ok" if row["passed"] else ("discrepancy" if row["discrepancy"] else "FAIL")
                lines.append(f"  {mark:>11}  {row['name']}: {row['lhs']} {row['relation']} "
                             f"{row['rhs']} (expected {row['expected']})")
        lines.append("")
        lines.append("scenario:")
        lines.extend(f"  {line}" for line in self.scenario.splitlines())
        return "\n".join(lines) + "\n"


def resolve_report_path(path: str | Path) -> Path:
    """Relative report paths land under $LINSTAB_REPORT_DIR when it is set."""
    path = Path(path)
    base = os.environ.get(REPORT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def emit_report(
    report: Report, path: str | Path, include_timing: bool = False
) -> tuple[Path, Path]:
    """Write ``<path>.txt`` and ``<path>.json``.

    A directory, existing or named with a trailing slash, gets
    ``<command>[-<replay>]-<seed>`` inside it.
    """
    as_dir = isinstance(path, str) and path.endswith(("/", os.sep))
    target = resolve_report_path(path)
    if as_dir:
        target.mkdir(parents=True, exist_ok=True)
    if target.is_dir():
        stem = report.command if report.replay is None else f"{report.command}-{report.replay}"
        target = target / f"{stem}-{report.seeds.seed}"
    elif target.suffix in (".txt", ".json"):
        target = target.with_suffix("")
    target.parent.mkdir(parents=True, exist_ok=True)
    # stems may contain dots, as in thm-5.18
    text_path = target.with_name(f"{target.name}.txt")
    json_path = target.with_name(f"{target.name}.json")
    text_path.write_text(report.to_text(), encoding="utf-8")
    json_path.write_text(report.to_json(include_timing), encoding="utf-8")
    log.info("wrote %s and %s", text_path, json_path)
    return text_path, json_path
