"""CLI command for run."""

import logging
from pathlib import Path
from typing import Optional

import typer

from fockloop.fock_core.main import purity
from fockloop.iterate.main import run as run_loop
from fockloop.models.run import Engine, IterationConfig
from fockloop.utils.cli import cli_error_handler, setup_logging, stderr_console
from fockloop.utils.output import OutputFormat, emit, render_csv, render_json


@cli_error_handler
def run(
    n: int = typer.Option(..., "--n", min=1, help="Number of single-photon pulses"),
    tau: float = typer.Option(..., "--tau", min=0.0, max=1.0, help="Beam-splitter transmittance"),
    eta: float = typer.Option(..., "--eta", min=0.0, max=1.0, help="Detector efficiency"),
    engine: Engine = typer.Option(Engine.ANALYTIC, "--engine", help="Single-step backend: 'analytic' or 'oracle'"),
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="'json' summary or 'csv' per-step table"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output file (omit to write to stdout)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging"),
) -> None:
    """
    Run the loop for a train of n single-photon pulses.

    Reports the net success probability, the fidelity to |n>, the purity and the
    full photon-number distribution of the accepted output state.
    """
    setup_logging(verbose)
    logger = logging.getLogger(__name__)

    summary = run_loop(IterationConfig(n_pulses=n, tau=tau, eta=eta, engine=engine))
    logger.info(f"p_net={summary.p_net:.6g}, fidelity={summary.fidelity:.6g}, purity={summary.purity:.6g}")

    if output_format is OutputFormat.JSON:
        text = render_json(summary)
    else:
        text = render_csv(
            ["step", "p_conditional", "fidelity", "purity"],
            ([s.index, s.p_conditional, s.fidelity, purity(s.state_after)] for s in summary.steps),
        )
    emit(text, out)
    if out is not None:
        stderr_console.print(f"[bold green]Success![/bold green] Summary saved to: {out}")
