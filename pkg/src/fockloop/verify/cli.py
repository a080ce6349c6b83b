"""CLI command for verify."""

import logging
from pathlib import Path
from typing import Optional

import typer

from fockloop.iterate.main import ORACLE_MAX_PULSES
from fockloop.utils.cli import cli_error_handler, setup_logging, stderr_console
from fockloop.utils.output import emit, render_json
from fockloop.verify.main import VERIFY_TOLERANCE, ensure_passed, verify as run_verify


@cli_error_handler
def verify(
    max_n: int = typer.Option(
        4, "--max-n", min=1, max=ORACLE_MAX_PULSES, help=f"Largest photon number checked (at most {ORACLE_MAX_PULSES})"
    ),
    grid: int = typer.Option(9, "--grid", min=2, help="Points per axis of the (tau, eta) grid over [0.05, 0.95]"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Report file (omit to write to stdout)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging"),
) -> None:
    """
    Check the closed-form steps and runs against the three-mode oracle.

    Exits with code 3, listing the offending (n, tau, eta) points, when any
    deviation reaches 1e-9.
    """
    setup_logging(verbose)
    logger = logging.getLogger(__name__)

    report = run_verify(max_n, grid)
    logger.info(f"{report.checks} checks, max deviation {report.max_deviation:.3g}")
    emit(render_json(report), out)

    ensure_passed(report)
    stderr_console.print(
        f"[bold green]Success![/bold green] All deviations below {VERIFY_TOLERANCE:g} "
        f"(max {report.max_deviation:.3g})"
    )
