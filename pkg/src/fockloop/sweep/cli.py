"""CLI command for sweep."""

import logging
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from fockloop.sweep.main import GridAxis, Metric, SweepSpec, sweep as run_sweep, to_result
from fockloop.utils.cli import cli_error_handler, setup_logging, stderr_console
from fockloop.utils.output import OutputFormat, emit, render_csv, render_json


def _parse_axis(text: str) -> GridAxis:
    try:
        return GridAxis.parse(text)
    except (ValueError, ValidationError) as e:
        raise typer.BadParameter(f"'{text}' is not a valid start:stop:count grid inside [0, 1] ({e})") from e


def _parse_metrics(text: str) -> tuple[Metric, ...]:
    try:
        return tuple(Metric(name.strip()) for name in text.split(",") if name.strip())
    except ValueError as e:
        choices = ", ".join(m.value for m in Metric)
        raise typer.BadParameter(f"'{text}' is not a comma-separated subset of: {choices}") from e


@cli_error_handler
def sweep(
    n: int = typer.Option(..., "--n", min=1, help="Number of single-photon pulses"),
    tau_grid: str = typer.Option("0:1:41", "--tau-grid", help="Transmittance grid as start:stop:count"),
    eta_grid: str = typer.Option("0:1:41", "--eta-grid", help="Detector efficiency grid as start:stop:count"),
    metrics: str = typer.Option(
        "probability,fidelity,purity", "--metrics", help="Comma-separated subset of probability, fidelity, purity"
    ),
    threads: int = typer.Option(
        0, "--threads", min=0, envvar="FOCKLOOP_THREADS", help="Worker threads (0 = one per CPU)"
    ),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", help="'csv' table or 'json' document"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output file (omit to write to stdout)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging"),
) -> None:
    """
    Sweep the loop over a (tau, eta) grid.

    Emits one row per grid point in tau-major order with the net success
    probability, the fidelity to |n> and the purity. Points where no run can
    be accepted report p_net 0 and nan for the state quantities.
    """
    setup_logging(verbose)
    logger = logging.getLogger(__name__)

    spec = SweepSpec(
        n_pulses=n,
        tau_grid=_parse_axis(tau_grid),
        eta_grid=_parse_axis(eta_grid),
        metrics=_parse_metrics(metrics),
    )
    points = run_sweep(spec, threads=threads, show_progress=out is not None)
    logger.info(f"Evaluated {len(points)} grid points for n={n}")

    if output_format is OutputFormat.JSON:
        text = render_json(to_result(spec, points))
    else:
        text = render_csv(spec.columns, (p.row(spec.metrics) for p in points))
    emit(text, out)
    if out is not None:
        stderr_console.print(f"[bold green]Success![/bold green] Sweep saved to: {out}")
