"""Rich console rendering of run reports."""

from __future__ import annotations

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from src.scenario.report import Outcome, Report

console = Console()

_OUTCOME_STYLE = {
    Outcome.OK: "green",
    Outcome.CHECK_FAILED: "red",
    Outcome.EVIDENCE_ONLY: "yellow",
    Outcome.VIOLATION_FOUND: "magenta",
}


def display_verdict(verdict: dict) -> None:
    """One stability verdict and its kept certificates."""
    table = Table(title=f"Linear stability: {verdict['kind']} ({verdict['coverage']})")
    table.add_column("#", style="dim", justify="right")
    table.add_column("W basis", style="cyan")
    table.add_column("rk E_W", justify="right")
    table.add_column("deg E_W", justify="right")
    table.add_column("lhs", style="green", justify="right")
    table.add_column("", justify="center")
    table.add_column("rhs", style="green", justify="right")
    for i, cert in enumerate(verdict["certificates"][:10], 1):
        sub = cert["subsheaf"]
        w = "; ".join(" ".join(row) for row in sub["w_basis"])
        table.add_row(str(i), w, str(sub["rank_EW"]), str(sub["deg_EW"]),
                      cert["lhs"], cert["relation"], cert["rhs"])
    console.print(table)
    console.print(
        f"  [dim]{verdict['subspaces_examined']} subspaces, "
        f"{verdict['nontrivial_examined']} nontrivial, {verdict['violations']} violations, "
        f"{verdict['equalities']} equalities[/dim]"
    )
    if len(verdict["certificates"]) > 10:
        console.print(f"  ... and {len(verdict['certificates']) - 10} more certificates")


def display_audit(audit: dict, only_findings: bool = False) -> None:
    """Audit rows with their exact sides; ``only_findings`` hides rows that pass."""
    rows = [r for r in audit["rows"] if not (only_findings and r["passed"])]
    if not rows:
        return
    params = ", ".join(f"{k}={v}" for k, v in audit["params"].items())
    table = Table(title=f"{audit['name']} ({params})")
    table.add_column("Row", style="cyan")
    table.add_column("lhs", justify="right")
    table.add_column("rel", justify="center")
    table.add_column("rhs", justify="right")
    table.add_column("expected", justify="center", style="dim")
    table.add_column("Status")
    for r in rows:
        if r["passed"]:
            status = "[green]ok[/green]"
        elif r["discrepancy"]:
            status = "[yellow]discrepancy[/yellow]"
        else:
            status = "[red]FAIL[/red]"
        table.add_row(r["name"], r["lhs"], r["relation"], r["rhs"], r["expected"], status)
    console.print(table)


def display_butler(butler: dict) -> None:
    diagram = butler["diagram"]
    table = Table(title=f"Butler diagram: S = {diagram['S']}, F_S = {diagram['F_S']}")
    table.add_column("Property", style="cyan")
    table.add_column("Status")
    table.add_column("Detail", style="dim")
    for c in butler["checks"]:
        status = {True: "[green]holds[/green]", False: "[red]fails[/red]",
                  None: "[dim]n/a[/dim]"}[c["passed"]]
        table.add_row(c["name"], status, c["detail"])
    console.print(table)


def display_report(report: Report) -> None:
    style = _OUTCOME_STYLE[report.outcome]
    title = report.command if report.replay is None else f"{report.command} {report.replay}"
    console.print(Panel(
        escape("\n".join(report.summary)) or "(no summary)",
        title=f"{title}: {report.outcome.value}",
        border_style=style,
    ))
    for verdict in report.verdicts:
        display_verdict(verdict)
    if "butler" in report.data:
        display_butler(report.data["butler"])
    # grids are large; show only rows that did not pass
    findings_only = len(report.audits) > 5
    for audit in report.audits:
        display_audit(audit, only_findings=findings_only)
