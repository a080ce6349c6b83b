"""Equivalence harness: closed-form steps and runs against the three-mode oracle."""

import logging
from collections.abc import Iterator
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from fockloop.analytic_step.main import StepCoefficients, ideal_net_probability, step_coefficients
from fockloop.iterate.main import ORACLE_MAX_PULSES, run, run_oracle_crosscheck
from fockloop.models.run import IterationConfig, RunSummary
from fockloop.oracle_sim.main import oracle_single_step
from fockloop.utils.errors import VerificationError

logger = logging.getLogger(__name__)

VERIFY_TOLERANCE = 1e-9
GRID_START, GRID_STOP = 0.05, 0.95


class CheckKind(str, Enum):
    STEP = "step"
    RUN = "run"
    TOP_WEIGHT = "top-weight"


class Deviation(BaseModel):
    """Largest absolute disagreement found at one (n, tau, eta) point."""

    model_config = ConfigDict(frozen=True)

    kind: CheckKind
    n: int
    tau: float
    eta: float
    deviation: float = Field(..., ge=0.0)


class VerifyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_n: int
    grid: int
    checks: int
    max_deviation: float
    worst: Deviation
    failures: list[Deviation]

    @property
    def passed(self) -> bool:
        return not self.failures


def parameter_grid(count: int) -> Iterator[tuple[float, float]]:
    axis = np.linspace(GRID_START, GRID_STOP, count)
    for tau in axis:
        for eta in axis:
            yield float(tau), float(eta)


def step_deviation(analytic: StepCoefficients, oracle: StepCoefficients) -> float:
    """Max difference in the no-click probability and in every normalized diagonal entry."""
    p_gap = abs(analytic.p_noclick - oracle.p_noclick)
    if analytic.p_noclick <= 0.0 or oracle.p_noclick <= 0.0:
        return p_gap
    entries = np.abs(analytic.c / analytic.p_noclick - oracle.c / oracle.p_noclick)
    return max(p_gap, float(entries.max()))


def run_deviation(analytic: RunSummary, oracle: RunSummary) -> float:
    gaps = [
        abs(analytic.p_net - oracle.p_net),
        abs(analytic.fidelity - oracle.fidelity),
        abs(analytic.purity - oracle.purity),
        float(np.max(np.abs(analytic.final_state.as_array() - oracle.final_state.as_array()))),
    ]
    gaps.extend(abs(a.p_conditional - o.p_conditional) for a, o in zip(analytic.steps, oracle.steps))
    return max(gaps)


def verify(max_n: int, grid: int) -> VerifyReport:
    """Compare single steps for n = 0..max_n and full runs of 1..max_n pulses.

    Runs are also checked against the ideal-detector net probability of their top component.

    Raises:
        ValueError: If max_n exceeds the oracle's pulse limit or the grid has fewer than two points.
    """
    if not 1 <= max_n <= ORACLE_MAX_PULSES:
        raise ValueError(f"max_n must lie in 1..{ORACLE_MAX_PULSES}, got {max_n}")
    if grid < 2:
        raise ValueError(f"Grid needs at least two points per axis, got {grid}")

    deviations: list[Deviation] = []
    for tau, eta in parameter_grid(grid):
        for n in range(max_n + 1):
            gap = step_deviation(step_coefficients(n, tau, eta), oracle_single_step(n, tau, eta))
            deviations.append(Deviation(kind=CheckKind.STEP, n=n, tau=tau, eta=eta, deviation=gap))
        for n in range(1, max_n + 1):
            config = IterationConfig(n_pulses=n, tau=tau, eta=eta)
            summary = run(config)
            gap = run_deviation(summary, run_oracle_crosscheck(config))
            deviations.append(Deviation(kind=CheckKind.RUN, n=n, tau=tau, eta=eta, deviation=gap))
            # only the |k> component feeds |k+1>, so fidelity * p_net ignores the detector
            gap = abs(summary.top_weight_probability - ideal_net_probability(n, tau))
            deviations.append(Deviation(kind=CheckKind.TOP_WEIGHT, n=n, tau=tau, eta=eta, deviation=gap))

    worst = max(deviations, key=lambda d: d.deviation)
    failures = [d for d in deviations if d.deviation >= VERIFY_TOLERANCE]
    logger.debug(f"{len(deviations)} checks, worst {worst.kind.value} n={worst.n} deviation {worst.deviation:.3g}")
    return VerifyReport(
        max_n=max_n,
        grid=grid,
        checks=len(deviations),
        max_deviation=worst.deviation,
        worst=worst,
        failures=failures,
    )


def ensure_passed(report: VerifyReport) -> None:
    """Raise with every offending point when any deviation reaches the tolerance."""
    if report.passed:
        return
    points = ", ".join(f"{d.kind.value}(n={d.n}, tau={d.tau:.4g}, eta={d.eta:.4g})" for d in report.failures)
    raise VerificationError(
        f"{len(report.failures)} check(s) deviate by at least {VERIFY_TOLERANCE:g}, "
        f"max {report.max_deviation:.3g}: {points}"
    )
