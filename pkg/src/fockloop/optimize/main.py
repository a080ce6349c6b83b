"""Choice of beam-splitter transmittance for a given pulse count and detector.

A uniform scan over the open interval (0, 1) locates the best sample; a golden-section
search inside the bracket formed by its neighbours then refines it, except for the
success probability with an ideal detector, whose maximizer is known in closed form.
Ties go to the smaller transmittance.
"""

import logging
from collections.abc import Callable
from enum import Enum
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import minimize_scalar

from fockloop.analytic_step.main import ideal_optimal_tau
from fockloop.iterate.main import run
from fockloop.models.run import SCHEMA_VERSION, IterationConfig
from fockloop.models.state import Efficiency
from fockloop.utils.errors import DeadBranchError

logger = logging.getLogger(__name__)

# Curves whose peak-to-peak spread stays below this have no meaningful argmax.
FLAT_TOLERANCE = 1e-12


class Objective(str, Enum):
    """Scalar figure of merit to maximize over the transmittance."""
    FIDELITY = "fidelity"
    PROBABILITY = "probability"
    PRODUCT = "product"


class OptimizeSpec(BaseModel):
    """Transmittance search for fixed pulse count and detector efficiency."""

    model_config = ConfigDict(frozen=True)

    n_pulses: int = Field(..., ge=1)
    eta: Efficiency
    objective: Objective = Objective.FIDELITY
    tau_resolution: float = Field(1e-3, gt=0.0, le=0.1)


class CurvePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    tau: float
    value: float


class OptimizeResult(BaseModel):
    """Best transmittance, or a flat flag when the objective does not depend on it."""

    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1] = Field(SCHEMA_VERSION, alias="schema")
    spec: OptimizeSpec
    tau_star: float | None
    objective_value: float
    degenerate_flat: bool
    curve: list[CurvePoint]


def objective_function(spec: OptimizeSpec) -> Callable[[float], float]:
    """Objective as a function of tau; transmittances where no run is accepted score 0."""

    def evaluate(tau: float) -> float:
        try:
            summary = run(IterationConfig(n_pulses=spec.n_pulses, tau=tau, eta=spec.eta))
        except DeadBranchError:
            return 0.0
        if spec.objective is Objective.FIDELITY:
            return summary.fidelity
        if spec.objective is Objective.PROBABILITY:
            return summary.p_net
        return summary.fidelity * summary.p_net

    return evaluate


def scan_grid(tau_resolution: float) -> np.ndarray:
    """Interior points k/m, k = 1..m-1, with m = round(1 / tau_resolution)."""
    m = max(2, round(1.0 / tau_resolution))
    return np.arange(1, m) / m


def _closed_form_optimum(spec: OptimizeSpec) -> float | None:
    """Exact maximizer of the success probability with an ideal detector, if it is interior."""
    if spec.objective is Objective.PROBABILITY and spec.eta == 1.0 and spec.n_pulses >= 2:
        return ideal_optimal_tau(spec.n_pulses)
    return None


def optimize(spec: OptimizeSpec) -> OptimizeResult:
    f = objective_function(spec)
    taus = scan_grid(spec.tau_resolution)
    values = np.array([f(float(t)) for t in taus])
    curve = [CurvePoint(tau=float(t), value=float(v)) for t, v in zip(taus, values)]

    if np.ptp(values) <= FLAT_TOLERANCE:
        logger.info(f"{spec.objective.value} is flat in tau for n={spec.n_pulses}, eta={spec.eta}")
        return OptimizeResult(
            spec=spec, tau_star=None, objective_value=float(values[0]), degenerate_flat=True, curve=curve
        )

    i = int(np.argmax(values))
    tau_star, best = float(taus[i]), float(values[i])
    closed_form = _closed_form_optimum(spec)
    if closed_form is not None:
        tau_star, best = closed_form, f(closed_form)
    elif 0 < i < taus.size - 1 and values[i - 1] < best and values[i + 1] < best:
        refined = minimize_scalar(
            lambda t: -f(t), bracket=(float(taus[i - 1]), tau_star, float(taus[i + 1])), method="golden"
        )
        refined_tau = float(refined.x)
        if taus[i - 1] < refined_tau < taus[i + 1] and -refined.fun > best:
            tau_star, best = refined_tau, float(-refined.fun)
    logger.debug(f"Scan maximum at tau={taus[i]:.6g}, refined to {tau_star:.10g}")

    return OptimizeResult(spec=spec, tau_star=tau_star, objective_value=best, degenerate_flat=False, curve=curve)
