"""(tau, eta) parameter sweeps of the n-pulse loop."""

import logging
import math
import os
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from rich.progress import BarColumn, Progress, TextColumn, TimeElapsedColumn

from fockloop.iterate.main import run
from fockloop.models.run import SCHEMA_VERSION, IterationConfig
from fockloop.utils.cli import stderr_console
from fockloop.utils.errors import DeadBranchError

logger = logging.getLogger(__name__)

DEFAULT_GRID_COUNT = 41


class Metric(str, Enum):
    """Quantities a sweep can report per grid point."""
    PROBABILITY = "probability"
    FIDELITY = "fidelity"
    PURITY = "purity"


# Output column for each metric, in emission order.
METRIC_COLUMNS: dict[Metric, str] = {
    Metric.PROBABILITY: "p_net",
    Metric.FIDELITY: "fidelity",
    Metric.PURITY: "purity",
}


class GridAxis(BaseModel):
    """Evenly spaced samples `start..stop` (inclusive) inside [0, 1]."""

    model_config = ConfigDict(frozen=True)

    start: float = Field(0.0, ge=0.0, le=1.0)
    stop: float = Field(1.0, ge=0.0, le=1.0)
    count: int = Field(DEFAULT_GRID_COUNT, ge=2)

    @classmethod
    def parse(cls, text: str) -> "GridAxis":
        """Parse the `start:stop:count` command-line form."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"Expected start:stop:count, got '{text}'")
        return cls(start=float(parts[0]), stop=float(parts[1]), count=int(parts[2]))

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


class SweepSpec(BaseModel):
    """Grid of (tau, eta) points for a fixed pulse count."""

    model_config = ConfigDict(frozen=True)

    n_pulses: int = Field(..., ge=1)
    tau_grid: GridAxis = GridAxis()
    eta_grid: GridAxis = GridAxis()
    metrics: tuple[Metric, ...] = tuple(Metric)

    @field_validator("metrics")
    @classmethod
    def _canonical_metrics(cls, metrics: tuple[Metric, ...]) -> tuple[Metric, ...]:
        if not metrics:
            raise ValueError("At least one metric is required")
        return tuple(m for m in Metric if m in metrics)

    @property
    def columns(self) -> list[str]:
        return ["tau", "eta", *(METRIC_COLUMNS[m] for m in self.metrics)]

    def points(self) -> Iterator[tuple[float, float]]:
        """Grid points in tau-major order."""
        for tau in self.tau_grid.values():
            for eta in self.eta_grid.values():
                yield float(tau), float(eta)


class SweepPoint(BaseModel):
    """Loop figures of merit at one grid point; nan where no state is accepted."""

    model_config = ConfigDict(frozen=True)

    tau: float
    eta: float
    p_net: float
    fidelity: float
    purity: float

    def row(self, metrics: tuple[Metric, ...]) -> list[float]:
        return [self.tau, self.eta, *(getattr(self, METRIC_COLUMNS[m]) for m in metrics)]


class SweepResult(BaseModel):
    """JSON form of a finished sweep."""

    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1] = Field(SCHEMA_VERSION, alias="schema")
    spec: SweepSpec
    columns: list[str]
    rows: list[list[float]]

    @model_validator(mode="after")
    def _rows_match_columns(self) -> "SweepResult":
        if any(len(row) != len(self.columns) for row in self.rows):
            raise ValueError("Every row needs one value per column")
        return self


def evaluate_point(n_pulses: int, tau: float, eta: float) -> SweepPoint:
    """Run the loop at one grid point; impossible post-selection yields p_net = 0."""
    try:
        summary = run(IterationConfig(n_pulses=n_pulses, tau=tau, eta=eta))
    except DeadBranchError as e:
        logger.debug(f"Dead point: {e}")
        return SweepPoint(tau=tau, eta=eta, p_net=0.0, fidelity=math.nan, purity=math.nan)
    return SweepPoint(tau=tau, eta=eta, p_net=summary.p_net, fidelity=summary.fidelity, purity=summary.purity)


def resolve_threads(threads: int) -> int:
    """0 means one worker per available CPU."""
    if threads < 0:
        raise ValueError(f"Thread count must be >= 0, got {threads}")
    return threads or os.cpu_count() or 1


def sweep(spec: SweepSpec, threads: int = 0, show_progress: bool = False) -> list[SweepPoint]:
    """Evaluate every grid point; the result order is the tau-major grid order."""
    points = list(spec.points())
    workers = resolve_threads(threads)
    logger.debug(f"Sweeping {len(points)} points for n={spec.n_pulses} on {workers} worker(s)")

    with (
        ThreadPoolExecutor(max_workers=workers) as pool,
        Progress(
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
            TimeElapsedColumn(),
            console=stderr_console,
            disable=not show_progress,
        ) as progress,
    ):
        task = progress.add_task(f"Sweeping {spec.n_pulses}-pulse loop...", total=len(points))
        results: list[SweepPoint] = []
        for point in pool.map(lambda tp: evaluate_point(spec.n_pulses, *tp), points):
            results.append(point)
            progress.advance(task)
    return results


def to_result(spec: SweepSpec, points: list[SweepPoint]) -> SweepResult:
    return SweepResult(spec=spec, columns=spec.columns, rows=[p.row(spec.metrics) for p in points])
