"""Dispatch a scenario to the owning module and grade the outcome."""

from __future__ import annotations

import logging
import time

from src.butler.diagram import audit_properties, butler_from_subbundle, max_slope_subbundle
from src.coherent.system import CoherentSystemP1, dual_span, is_generated
from src.hyperelliptic.pipeline import PullbackSeries
from src.numerology.grid import run_grid
from src.scenario.model import Command, Scenario
from src.scenario.parser import scenario_to_text
from src.scenario.replays import REPLAYS, ReplayContext, ReplayResult, run_replay
from src.scenario.report import Outcome, Report, SeedProvenance
from src.stability.certificates import VerdictKind
from src.stability.config import StabilityConfig
from src.stability.linear import linstab, linstab_exhaustive
from src.stability.slopes import alpha_small_checks, slope_stability_p1

log = logging.getLogger(__name__)

_VERDICT_OUTCOME = {
    VerdictKind.STABLE: Outcome.OK,
    VerdictKind.STRICTLY_SEMISTABLE: Outcome.OK,
    VerdictKind.UNSTABLE: Outcome.VIOLATION_FOUND,
    VerdictKind.EVIDENCE_ONLY: Outcome.EVIDENCE_ONLY,
}


def _system_data(scenario: Scenario, sys: CoherentSystemP1) -> dict:
    data = {"system": sys.to_dict(), "generated": is_generated(sys),
            "rejected_draws": sys.rejected_draws}
    model = scenario.hyperelliptic
    if model is not None:
        data["hyperelliptic"] = model.to_dict()
        data["pullback"] = PullbackSeries(model, sys).lifted.to_dict()
    return data


def _run_dsb(scenario: Scenario, config: StabilityConfig) -> ReplayResult:
    sys = scenario.build_system()
    result = dual_span(sys)
    m = result.splitting
    verdict = slope_stability_p1(m)
    data = _system_data(scenario, sys)
    data.update(dual_span=m.to_dict(), profile=result.profile.to_dict(),
                dual_span_verdict=verdict.to_dict())
    return ReplayResult(
        outcome=Outcome.OK,
        data=data,
        summary=[f"M of {sys.type_tuple} over {sys.field.label}: {m.to_text()} "
                 f"({verdict.kind.value})"],
    )


def _run_linstab(scenario: Scenario, config: StabilityConfig) -> ReplayResult:
    sys = scenario.build_system()
    if scenario.exhaustive:
        verdict = linstab_exhaustive(sys, config)
    else:
        verdict = linstab(sys, seed=scenario.seed, samples=scenario.samples, config=config)
    data = _system_data(scenario, sys)
    data["dual_span"] = dual_span(sys).splitting.to_dict()
    data["alpha_small"] = alpha_small_checks(sys.bundle).to_dict()
    payload = verdict.to_dict(sys.field)
    return ReplayResult(
        outcome=_VERDICT_OUTCOME[verdict.kind],
        data=data,
        verdicts=[payload],
        certificates=payload["certificates"],
        summary=[f"{sys.type_tuple} over {sys.field.label}: {verdict.kind.value} "
                 f"({verdict.coverage.value}, {verdict.subspaces_examined} subspaces, "
                 f"{verdict.violations} violations, {verdict.equalities} equalities)"],
    )


def _run_butler(scenario: Scenario, config: StabilityConfig) -> ReplayResult:
    sys = scenario.build_system()
    dsb = dual_span(sys)
    diagram = butler_from_subbundle(sys, max_slope_subbundle(sys, dsb))
    audit = audit_properties(diagram)
    data = _system_data(scenario, sys)
    data["butler"] = audit.to_dict()
    failed = [c.name for c in audit.checks if c.passed is False]
    return ReplayResult(
        outcome=Outcome.OK if audit.all_passed else Outcome.CHECK_FAILED,
        data=data,
        summary=[f"S = {diagram.s.to_text()} in M = {diagram.m.to_text()}: "
                 f"dim W = {diagram.dim_w}, F_S = {diagram.f_s.to_text()}; "
                 + ("all properties hold" if not failed else f"failed: {', '.join(failed)}")],
    )


def _run_audit_all(scenario: Scenario, config: StabilityConfig) -> ReplayResult:
    report = run_grid(scenario.grid)
    payload = report.to_dict()
    census = ", ".join(f"{k} x{v}" for k, v in report.census().items()) or "none"
    return ReplayResult(
        outcome=Outcome.OK if report.passed else Outcome.CHECK_FAILED,
        data={"grid": report.grid, "totals": payload["totals"],
              "discrepancy_census": payload["discrepancy_census"]},
        audits=list(report.audits),
        summary=[f"grid {report.grid}: {len(report.audits)} audits, {report.total_rows} rows, "
                 f"{report.unexpected_failures} unexpected failures",
                 f"discrepancies: {census}"],
    )


def _run_replay(scenario: Scenario, config: StabilityConfig) -> ReplayResult:
    entry = REPLAYS[scenario.replay]
    ctx = ReplayContext(
        seed=scenario.seed,
        params=dict(scenario.params),
        config=config,
        prime=scenario.prime or entry.prime,
        samples=scenario.samples or entry.samples,
        hyperelliptic=scenario.hyperelliptic,
    )
    return run_replay(scenario.replay, ctx)


_DISPATCH = {
    Command.DSB: _run_dsb,
    Command.LINSTAB: _run_linstab,
    Command.BUTLER_AUDIT: _run_butler,
    Command.AUDIT_ALL: _run_audit_all,
    Command.PAPER_VERIFY: _run_replay,
}


def run(scenario: Scenario, config: StabilityConfig | None = None) -> Report:
    """Execute one scenario.  Precondition and guard errors propagate to the caller."""
    config = config or StabilityConfig()
    log.info("running %s", scenario.command.value)
    start = time.perf_counter()
    result = _DISPATCH[scenario.command](scenario, config)
    elapsed = time.perf_counter() - start
    return Report(
        command=scenario.command.value,
        replay=scenario.replay,
        scenario=scenario_to_text(scenario),
        seeds=SeedProvenance(seed=scenario.seed),
        outcome=result.outcome,
        exit_code=int(result.outcome.exit_code),
        verdicts=result.verdicts,
        certificates=result.certificates,
        audits=[a.to_dict() for a in result.audits],
        data=result.data,
        summary=result.summary,
        timing_seconds=round(elapsed, 3),
    )
