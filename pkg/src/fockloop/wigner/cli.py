"""CLI command for wigner."""

import logging
from pathlib import Path
from typing import Optional

import numpy as np
import typer

from fockloop.iterate.main import run as run_loop
from fockloop.models.run import IterationConfig
from fockloop.models.state import DiagonalFockState
from fockloop.utils.cli import cli_error_handler, setup_logging, stderr_console
from fockloop.utils.output import emit, render_csv, render_json
from fockloop.wigner.main import GridSpec, negativity, wigner_state


@cli_error_handler
def wigner(
    n: int = typer.Option(..., "--n", min=0, help="Number of single-photon pulses (0 exports the vacuum)"),
    tau: float = typer.Option(0.5, "--tau", min=0.0, max=1.0, help="Beam-splitter transmittance"),
    eta: float = typer.Option(1.0, "--eta", min=0.0, max=1.0, help="Detector efficiency"),
    extent: float = typer.Option(5.0, "--extent", min=0.5, help="Grid covers [-extent, extent] in both quadratures"),
    points: int = typer.Option(201, "--points", min=2, help="Samples per quadrature axis"),
    reference: bool = typer.Option(False, "--reference", help="Add a w_ref column with the pure |n> Wigner function"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output file (omit to write to stdout)"),
    sidecar: Optional[Path] = typer.Option(None, "--sidecar", help="Negativity report JSON (default: next to --out)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging"),
) -> None:
    """
    Export the Wigner function of the generated state as x,p,w CSV.

    A JSON sidecar holds the negativity report: minimum value and location,
    value at the origin, integral and negative volume.
    """
    setup_logging(verbose)
    logger = logging.getLogger(__name__)

    if n == 0:
        state = DiagonalFockState.vacuum()
    else:
        state = run_loop(IterationConfig(n_pulses=n, tau=tau, eta=eta)).final_state

    spec = GridSpec(x_min=-extent, x_max=extent, p_min=-extent, p_max=extent, nx=points, n_p=points)
    grid = wigner_state(state, spec)
    report = negativity(grid)
    logger.info(f"Wigner minimum {report.min_value:.6g}, negative volume {report.negative_volume:.6g}")

    header = ["x", "p", "w"]
    columns = [grid.values.ravel()]
    if reference:
        header.append("w_ref")
        columns.append(wigner_state(DiagonalFockState.fock(n), spec).values.ravel())
    xs, ps = np.meshgrid(grid.x, grid.p, indexing="ij")
    rows = zip(xs.ravel().tolist(), ps.ravel().tolist(), *(column.tolist() for column in columns))
    csv_text, report_text = render_csv(header, rows), render_json(report)

    if sidecar is None and out is not None:
        sidecar = out.with_suffix(".json")
    # report first: a failed sidecar write leaves no CSV behind
    if sidecar is not None:
        emit(report_text, sidecar)
    emit(csv_text, out)
    if sidecar is not None:
        stderr_console.print(f"[bold green]Success![/bold green] Negativity report saved to: {sidecar}")
    else:
        stderr_console.print_json(report.model_dump_json())
