"""
CLI application using Typer.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Annotated, NoReturn, Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from tick2impact import __version__
from tick2impact.application.dto.run_options import (
    AnalysisOptions,
    ReportOptions,
    SimulationOptions,
)
from tick2impact.application.services.analysis_service import AnalysisService
from tick2impact.application.services.report_service import ReportService
from tick2impact.application.services.simulation_service import SimulationService
from tick2impact.shared.exceptions import ConfigError, Tick2ImpactError, TickDataError
from tick2impact.shared.logging import RunDiagnostics, setup_logging
from tick2impact.shared.result import Err
from tick2impact.shared.settings import get_settings

# Create CLI app
app = typer.Typer(
    name="tick2impact",
    help="Measure the market impact of trade imbalances in Level-1 tick data.",
    add_completion=False,
)

console = Console()

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DATA = 3


def exit_code_for(error: Tick2ImpactError) -> int:
    """Configuration errors exit 2, data errors 3, anything else 1."""
    if isinstance(error, ConfigError):
        return EXIT_CONFIG
    if isinstance(error, TickDataError):
        return EXIT_DATA
    return EXIT_FAILURE


def fail(error: Tick2ImpactError, title: str) -> NoReturn:
    console.print()
    console.print(Panel(f"[red]{error}[/red]", title=title, border_style="red"))
    raise typer.Exit(exit_code_for(error))


def _fmt(value: float, spec: str = ".3f") -> str:
    return "n/a" if math.isnan(value) else format(value, spec)


def _print_warnings(diagnostics: RunDiagnostics, limit: int = 5) -> None:
    if not diagnostics.has_warnings:
        return
    warnings = diagnostics.warnings
    console.print()
    console.print(f"[yellow]Warnings ({len(warnings)}):[/yellow]")
    for warning in warnings[:limit]:
        console.print(f"  - {warning}")
    if len(warnings) > limit:
        console.print(f"  ... and {len(warnings) - limit} more")


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        console.print(f"tick2impact version {__version__}")
        raise typer.Exit()


@app.callback()
def main_callback(
    version: Annotated[
        Optional[bool],
        typer.Option(
            "--version",
            help="Show version and exit.",
            callback=version_callback,
            is_eager=True,
        ),
    ] = None,
) -> None:
    """Trade-imbalance market impact toolkit."""
    pass


@app.command()
def simulate(
    config: Annotated[Path, typer.Option("--config", "-c", help="Simulator configuration (TOML).")],
    out: Annotated[Path, typer.Option("--out", "-o", help="Output directory.")],
    no_header: Annotated[
        bool, typer.Option("--no-header", help="Write the tick file without a header line.")
    ] = False,
    verbose: Annotated[bool, typer.Option("--verbose", "-V", help="Verbose output.")] = False,
) -> None:
    """
    Generate a synthetic session with ground-truth labels.

    Examples:

        tick2impact simulate --config sim.toml --out data/
    """
    setup_logging(verbose=verbose)
    options = SimulationOptions(config_path=config, output_dir=out, header=not no_header)

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
        transient=True,
    ) as progress:
        progress.add_task("Simulating...", total=None)
        result = SimulationService().simulate(options)

    if isinstance(result, Err):
        fail(result.error, "Simulation failed")

    run = result.value
    session = run.session
    console.print()
    console.print(
        Panel(
            "\n".join(f"[green]{p}[/green]" for p in run.artifacts),
            title=f"Simulated {session.descriptor}",
            border_style="green",
        )
    )
    table = Table(title="Session", show_header=False, box=None)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="white")
    table.add_row("Events", str(len(session.events)))
    table.add_row("Trades", str(session.trade_count))
    table.add_row("Quotes", str(session.quote_count))
    table.add_row("Executed volume", str(session.executed_volume))
    table.add_row("Informed episodes", str(len(session.truth)))
    for name, value in sorted(session.counters.items()):
        if name not in ("trades", "quotes"):
            table.add_row(name, str(value))
    table.add_row("Time", f"{run.total_time_ms:.0f}ms")
    console.print(table)


@app.command()
def analyze(
    ticks: Annotated[Path, typer.Option("--ticks", "-t", help="Canonical tick file.")],
    desc: Annotated[Path, typer.Option("--desc", "-d", help="Session descriptor sidecar.")],
    out: Annotated[Path, typer.Option("--out", "-o", help="Output directory.")],
    v_max: Annotated[
        Optional[float], typer.Option("--v-max", help="Largest normalized volume.")
    ] = None,
    v_step: Annotated[
        Optional[float], typer.Option("--v-step", help="Normalized volume step.")
    ] = None,
    overshoot: Annotated[
        Optional[float], typer.Option("--overshoot", help="Overshoot tolerance.")
    ] = None,
    min_count: Annotated[
        Optional[int], typer.Option("--min-count", help="Episodes a bin needs to enter the fit.")
    ] = None,
    weighted: Annotated[
        bool, typer.Option("--weighted", help="Weight the fit by episodes per bin.")
    ] = False,
    no_post_quote: Annotated[
        bool,
        typer.Option(
            "--no-post-quote",
            help="Resolve episodes that end after the last quote against the last mid.",
        ),
    ] = False,
    verbose: Annotated[bool, typer.Option("--verbose", "-V", help="Verbose output.")] = False,
) -> None:
    """
    Extract imbalance episodes and fit the linear impact model.

    Examples:

        tick2impact analyze --ticks data/session.csv --desc data/session.desc --out out/

        tick2impact analyze --ticks t.csv --desc t.desc --out out/ --v-max 2.5
    """
    setup_logging(verbose=verbose)
    options = AnalysisOptions.from_settings(
        ticks_path=ticks,
        descriptor_path=desc,
        output_dir=out,
        v_step=v_step,
        v_max=v_max,
        overshoot_tol=overshoot,
        min_count=min_count,
        weighted=weighted,
        require_post_quote=not no_post_quote,
        verbose=verbose or None,
    )

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
        transient=True,
    ) as progress:
        progress.add_task("Analyzing...", total=None)
        result = AnalysisService().analyze(options)

    if isinstance(result, Err):
        fail(result.error, "Analysis failed")

    analysis = result.value
    fit = analysis.regression
    console.print()
    if fit is not None:
        console.print(
            Panel(
                f"I = {fit.mu:.3f} + {fit.lam:.3f} v ticks\n"
                f"λ_err = {fit.lambda_err:.1f}%   R² = {fit.r2:.3f}   p = {fit.p_value:.2e}",
                title=f"{analysis.descriptor.instrument} impact regression",
                border_style="green",
            )
        )
    else:
        console.print(
            Panel(
                "[yellow]Not enough populated volume bins for a fit[/yellow]",
                title=f"{analysis.descriptor.instrument} impact regression",
                border_style="yellow",
            )
        )

    table = Table(title="Volume bins")
    table.add_column("v", justify="right", style="cyan")
    table.add_column("V_T", justify="right")
    table.add_column("n", justify="right")
    table.add_column("mean impact", justify="right")
    table.add_column("median", justify="right")
    table.add_column("participation", justify="right")
    table.add_column("duration s", justify="right")
    for b in analysis.bins:
        style = "dim" if b.sparse else None
        table.add_row(
            f"{b.v:g}",
            str(b.target),
            str(b.n),
            f"{b.mean_impact:.3f}",
            f"{b.median:.1f}",
            f"{b.median_participation:.2f}",
            f"{b.mean_duration_s:.3f}",
            style=style,
        )
    console.print(table)

    stats = Table(show_header=False, box=None)
    stats.add_column("Metric", style="cyan")
    stats.add_column("Value", style="white")
    stats.add_row("Touch volume", f"{analysis.touch_volume:.3f}")
    stats.add_row("Episodes", f"{analysis.accepted_count} accepted of {analysis.episode_count}")
    if analysis.curve is not None:
        stats.add_row("Participation asymptote", _fmt(analysis.curve.asymptote, ".2f"))
    stats.add_row("Output", str(out))
    stats.add_row("Time", f"{analysis.total_time_ms:.0f}ms")
    console.print(stats)
    _print_warnings(analysis.diagnostics)


@app.command()
def report(
    inputs: Annotated[
        list[Path], typer.Option("--in", "-i", help="Analysis output directory (repeatable).")
    ],
    out: Annotated[Path, typer.Option("--out", "-o", help="Table CSV to write.")],
    concave_intercept: Annotated[
        Optional[float],
        typer.Option("--concave-intercept", help="Intercept in ticks above which a row is concave."),
    ] = None,
) -> None:
    """
    Merge analysis summaries into one regression table.

    Examples:

        tick2impact report --in out/CLc1 --in out/LCOc1 --out table.csv
    """
    setup_logging()
    intercept = get_settings().concave_intercept if concave_intercept is None else concave_intercept
    options = ReportOptions(inputs=list(inputs), output_path=out, concave_intercept=intercept)
    result = ReportService().report(options)
    if isinstance(result, Err):
        fail(result.error, "Report failed")

    table = Table(title=f"Linear regression of the market impact ({out})")
    for column in ("RIC", "touch", "δ", "μ", "λ", "λ_err %", "R²", "p", "part."):
        table.add_column(column, justify="left" if column == "RIC" else "right")
    for row in result.value.rows:
        table.add_row(
            row.instrument,
            _fmt(row.touch, ".1f"),
            f"{row.delta:g}",
            _fmt(row.mu),
            _fmt(row.lam),
            _fmt(row.lambda_err, ".1f"),
            _fmt(row.r2),
            _fmt(row.p_value, ".2e"),
            _fmt(row.part_rate, ".2f"),
            style="on grey23" if row.concave else None,
        )
    console.print(table)
    concave = result.value.concave_rows
    if concave:
        names = ", ".join(r.instrument for r in concave)
        console.print(f"[yellow]Concave at small volumes (μ > {intercept:g} ticks):[/yellow] {names}")


@app.command()
def check(
    ticks: Annotated[Path, typer.Option("--ticks", "-t", help="Canonical tick file.")],
    desc: Annotated[Path, typer.Option("--desc", "-d", help="Session descriptor sidecar.")],
    limit: Annotated[int, typer.Option("--limit", help="Violations to list.")] = 10,
) -> None:
    """
    Replay a tick file and report format and book violations.

    Exits 3 when any violation is found.
    """
    setup_logging()
    result = AnalysisService().check(ticks, desc)
    if isinstance(result, Err):
        fail(result.error, "Check failed")

    diagnostics = result.value
    table = Table(title="Replay", show_header=False, box=None)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", style="white")
    for name, value in diagnostics.summary().items():
        table.add_row(name, str(value))
    console.print(table)

    if diagnostics.ok:
        console.print("[green]No violations[/green]")
        return
    console.print(f"[red]{len(diagnostics.violations)} violations[/red]")
    for violation in diagnostics.violations[:limit]:
        console.print(f"  - {violation}")
    raise typer.Exit(EXIT_DATA)


def main() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
