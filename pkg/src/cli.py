"""CLI interface for the linear stability workbench.

Usage:
    linstab dsb --field QQ --bundle "O(3)" --random 4
    linstab linstab --field "GF(2)" --bundle "O(3)" --random 4 --exhaustive
    linstab butler-audit --bundle "O(3)" -s "s^3" -s "s^2*t" -s "s*t^2" -s "t^3"
    linstab paper-verify thm-5.18 --e 3 --prime 5 --samples 20 --seed 1
    linstab audit-all --report out/
    linstab run scenario.txt

Exit codes: 0 ok, 1 check failed, 2 evidence only, 3 violation found,
4 input error, 5 resource guard.
"""

from __future__ import annotations

import logging
import os
import sys

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from src import __version__
from src.core.errors import CertificationError, ResourceGuardError, ScenarioError
from src.scenario.model import Scenario
from src.scenario.parser import load_scenario
from src.scenario.report import REPORT_DIR_ENV, ExitCode, emit_report
from src.scenario.runner import run
from src.stability.config import StabilityConfig

console = Console()
err_console = Console(stderr=True)
log = logging.getLogger(__name__)


def _fail(message: str, code: ExitCode) -> None:
    err_console.print(f"[red]{escape(message)}[/red]")
    sys.exit(int(code))


def _scenario(**values) -> Scenario:
    values = {k: v for k, v in values.items() if v not in (None, (), {})}
    try:
        return Scenario.model_validate(values)
    except ValidationError as exc:
        err = exc.errors()[0]
        name = f"{err['loc'][0]}: " if err["loc"] else ""
        raise ScenarioError(f"{name}{err['msg']}") from exc


def _report_target(target: str | None) -> str | None:
    """No path with $LINSTAB_REPORT_DIR set means the directory itself."""
    if target is None:
        if not os.environ.get(REPORT_DIR_ENV):
            return None
        return "./"
    return target


def _execute(ctx: click.Context, build, report_path: str | None) -> None:
    """Validate, run, display, write the report, and exit with the outcome's code."""
    from src.utils.display import display_report

    opts = ctx.obj
    try:
        scenario = build()
        report = run(scenario, opts["config"])
    except (ScenarioError, ValueError) as exc:
        _fail(f"input error: {exc}", ExitCode.INPUT_ERROR)
    except ResourceGuardError as exc:
        _fail(f"refused: {exc}", ExitCode.RESOURCE_GUARD)
    except CertificationError as exc:
        _fail(f"certification failed: {exc}", ExitCode.CHECK_FAILED)

    if opts["json"]:
        click.echo(report.to_json(opts["timing"]), nl=False)
    else:
        display_report(report)

    target = _report_target(report_path or scenario.report)
    if target is not None:
        try:
            text_path, json_path = emit_report(report, target, opts["timing"])
        except OSError as exc:
            _fail(f"cannot write report: {exc}", ExitCode.INPUT_ERROR)
        if not opts["json"]:
            console.print(f"[dim]report: {text_path}, {json_path}[/dim]")
    sys.exit(report.exit_code)


# ── Shared options ────────────────────────────────────────────────────


def _system_options(fn):
    fn = click.option("--report", "report_path", default=None,
                      help="Report path (stem or directory)")(fn)
    fn = click.option("--seed", default=0, show_default=True, help="Scenario seed")(fn)
    fn = click.option("--random", "random_count", default=None, type=int,
                      help="Sample this many random sections")(fn)
    fn = click.option("-s", "--section", "sections", multiple=True,
                      help="One section: comma-separated forms, one per summand")(fn)
    fn = click.option("--bundle", default=None, help='Splitting type, e.g. "O(3) + O(4)"')(fn)
    fn = click.option("--base", default="p1", show_default=True,
                      help="p1 or hyperelliptic(g, n)")(fn)
    fn = click.option("--field", "field_", default="QQ", show_default=True,
                      help="QQ or GF(p)")(fn)
    return fn


@click.group()
@click.version_option(__version__, prog_name="linstab")
@click.option("-v", "--verbose", count=True, help="-v for info, -vv for debug logging")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report instead of tables")
@click.option("--timing", is_flag=True, help="Keep wall-clock timing in JSON output")
@click.option("--workers", default=1, show_default=True, help="Worker processes for sweeps")
@click.option("--max-n", default=6, show_default=True, help="Guard: largest dim V swept")
@click.option("--max-prime", default=13, show_default=True, help="Guard: largest p swept")
@click.pass_context
def main(ctx: click.Context, verbose: int, as_json: bool, timing: bool, workers: int,
         max_n: int, max_prime: int) -> None:
    """Dual span bundles and linear stability of coherent systems on P^1."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(message)s", datefmt="[%X]",
                        handlers=[RichHandler(console=err_console, show_path=False)], force=True)
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    ctx.obj["timing"] = timing
    ctx.obj["config"] = StabilityConfig(max_n=max_n, max_prime=max_prime, max_workers=workers)


@main.command()
@_system_options
@click.pass_context
def dsb(ctx: click.Context, field_: str, base: str, bundle: str | None,
        sections: tuple[str, ...], random_count: int | None, seed: int,
        report_path: str | None) -> None:
    """Compute the dual span bundle M of (E, V) and its slope verdict."""
    _execute(ctx, lambda: _scenario(
        command="dsb", field=field_, base=base, bundle=bundle, sections=sections,
        random_count=random_count, seed=seed,
    ), report_path)


@main.command()
@_system_options
@click.option("--samples", default=None, type=int, help="Subspaces to sample off the guard")
@click.option("--exhaustive", is_flag=True, help="Force the exhaustive GF(p) sweep")
@click.pass_context
def linstab(ctx: click.Context, field_: str, base: str, bundle: str | None,
            sections: tuple[str, ...], random_count: int | None, seed: int,
            report_path: str | None, samples: int | None, exhaustive: bool) -> None:
    """Decide linear (semi)stability, with certificates."""
    _execute(ctx, lambda: _scenario(
        command="linstab", field=field_, base=base, bundle=bundle, sections=sections,
        random_count=random_count, seed=seed, samples=samples, exhaustive=exhaustive,
    ), report_path)


@main.command("butler-audit")
@_system_options
@click.pass_context
def butler_audit(ctx: click.Context, field_: str, base: str, bundle: str | None,
                 sections: tuple[str, ...], random_count: int | None, seed: int,
                 report_path: str | None) -> None:
    """Build the Butler diagram of the maximal-slope subbundle and audit its properties."""
    _execute(ctx, lambda: _scenario(
        command="butler-audit", field=field_, base=base, bundle=bundle, sections=sections,
        random_count=random_count, seed=seed,
    ), report_path)


def _params(e: int | None, n: int | None, g: int | None, extra: tuple[str, ...]) -> dict:
    params = {k: v for k, v in (("e", e), ("n", n), ("g", g)) if v is not None}
    for item in extra:
        name, sep, value = item.partition("=")
        if not sep or not value.strip().lstrip("-").isdigit():
            raise ScenarioError(f"--param expects name=integer, got {item!r}")
        params[name.strip()] = int(value)
    return params


@main.command("paper-verify")
@click.argument("replay")
@click.option("--e", "e", default=None, type=int, help="Degree parameter e")
@click.option("--n", "n", default=None, type=int, help="Parameter n")
@click.option("--g", "g", default=None, type=int, help="Genus g")
@click.option("--param", "extra", multiple=True, help="Any other replay parameter, name=value")
@click.option("--prime", default=None, type=int, help="Prime for GF(p) sweeps")
@click.option("--samples", default=None, type=int, help="Number of seeded samples")
@click.option("--seed", default=0, show_default=True, help="Scenario seed")
@click.option("--base", default=None, help="hyperelliptic(g, n) for thm-4.3")
@click.option("--report", "report_path", default=None, help="Report path (stem or directory)")
@click.pass_context
def paper_verify(ctx: click.Context, replay: str, e: int | None, n: int | None, g: int | None,
                 extra: tuple[str, ...], prime: int | None, samples: int | None, seed: int,
                 base: str | None, report_path: str | None) -> None:
    """Replay one published claim (thm-5.18, thm-4.3, prop-5.11, cor-5.15, ...)."""
    _execute(ctx, lambda: _scenario(
        command="paper-verify", replay=replay, params=_params(e, n, g, extra), prime=prime,
        samples=samples, seed=seed, base=base,
    ), report_path)


@main.command("audit-all")
@click.option("--grid", default="default", show_default=True, help="default or quick")
@click.option("--report", "report_path", default=None, help="Report path (stem or directory)")
@click.pass_context
def audit_all(ctx: click.Context, grid: str, report_path: str | None) -> None:
    """Run every numerology audit over its parameter grid."""
    _execute(ctx, lambda: _scenario(command="audit-all", grid=grid), report_path)


@main.command("run")
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--report", "report_path", default=None, help="Overrides the scenario's report key")
@click.pass_context
def run_scenario(ctx: click.Context, scenario_file: str, report_path: str | None) -> None:
    """Execute a scenario file."""
    _execute(ctx, lambda: load_scenario(scenario_file), report_path)


if __name__ == "__main__":
    main()
