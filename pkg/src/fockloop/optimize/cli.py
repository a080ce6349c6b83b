"""CLI command for optimize."""

import logging
from pathlib import Path
from typing import Optional

import typer

from fockloop.optimize.main import Objective, OptimizeSpec, optimize as run_optimize
from fockloop.utils.cli import cli_error_handler, setup_logging, stderr_console
from fockloop.utils.output import emit, render_json


@cli_error_handler
def optimize(
    n: int = typer.Option(..., "--n", min=1, help="Number of single-photon pulses"),
    eta: float = typer.Option(..., "--eta", min=0.0, max=1.0, help="Detector efficiency"),
    objective: Objective = typer.Option(
        Objective.FIDELITY, "--objective", help="'fidelity', 'probability' or their 'product'"
    ),
    resolution: float = typer.Option(1e-3, "--resolution", help="Spacing of the transmittance scan, in (0, 0.1]"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output file (omit to write to stdout)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging"),
) -> None:
    """
    Find the beam-splitter transmittance that maximizes the chosen objective.

    Prints tau_star, the objective value there and the sampled curve as JSON.
    A flat objective is reported with degenerate_flat set and no tau_star.
    """
    setup_logging(verbose)
    logger = logging.getLogger(__name__)

    result = run_optimize(OptimizeSpec(n_pulses=n, eta=eta, objective=objective, tau_resolution=resolution))
    if result.degenerate_flat:
        logger.warning(f"Objective '{objective.value}' does not depend on tau (value {result.objective_value:.6g})")
    else:
        logger.info(f"tau*={result.tau_star:.8g}, {objective.value}={result.objective_value:.8g}")

    emit(render_json(result), out)
    if out is not None:
        stderr_console.print(f"[bold green]Success![/bold green] Optimization saved to: {out}")
