"""The feedback loop: n pulses, each added conditionally on a dark detector.

The loop state is always diagonal in the photon-number basis, so a step on a mixture is
the probability-weighted sum of the single-step outputs of its components.
"""

import logging
from collections.abc import Callable

import numpy as np

from fockloop.analytic_step.main import StepCoefficients, step_coefficients
from fockloop.fock_core.main import fidelity_to_fock, mean_photon_number, normalize, purity
from fockloop.models.run import Engine, IterationConfig, RunSummary, StepResult
from fockloop.models.state import DiagonalFockState
from fockloop.oracle_sim.main import oracle_single_step
from fockloop.utils.errors import DeadBranchError, FockDomainError

logger = logging.getLogger(__name__)

# Below this the normalization division is meaningless.
DEAD_BRANCH_THRESHOLD = 1e-300
ORACLE_MAX_PULSES = 6

STEP_BACKENDS: dict[Engine, Callable[[int, float, float], StepCoefficients]] = {
    Engine.ANALYTIC: step_coefficients,
    Engine.ORACLE: oracle_single_step,
}


def mixed_step_weights(state: DiagonalFockState, tau: float, eta: float, engine: Engine = Engine.ANALYTIC) -> np.ndarray:
    """Unnormalized loop-mode weights after one no-click step from a diagonal mixture."""
    backend = STEP_BACKENDS[engine]
    probs = state.as_array()
    out = np.zeros(probs.size + 1)
    for k, weight in enumerate(probs):
        if weight == 0.0:
            continue
        out[: k + 2] += weight * backend(k, tau, eta).c
    return out


def mixed_step(state: DiagonalFockState, tau: float, eta: float, engine: Engine = Engine.ANALYTIC) -> StepResult:
    """Add one photon to a diagonal mixture, conditioned on the detector staying dark.

    The step index and the fidelity target are the top photon number of the output,
    which is the step number for a run started from vacuum.

    Raises:
        DeadBranchError: If the no-click probability vanishes.
    """
    index = state.cutoff + 1
    weights = mixed_step_weights(state, tau, eta, engine)
    p_conditional = float(np.sum(weights))
    if p_conditional <= DEAD_BRANCH_THRESHOLD:
        raise DeadBranchError(f"Step {index} cannot succeed at tau={tau}, eta={eta} (p={p_conditional:.3g})")
    state_after, _ = normalize(DiagonalFockState(probs=weights))
    return StepResult(
        index=index,
        p_conditional=p_conditional,
        fidelity=fidelity_to_fock(state_after, index),
        state_after=state_after,
    )


def run(config: IterationConfig) -> RunSummary:
    """Feed `config.n_pulses` single photons through the loop, starting from vacuum."""
    state = DiagonalFockState.vacuum()
    steps: list[StepResult] = []
    p_net = 1.0
    for index in range(1, config.n_pulses + 1):
        step = mixed_step(state, config.tau, config.eta, config.engine)
        logger.debug(f"Step {index}: p={step.p_conditional:.6g}, fidelity={step.fidelity:.6g}")
        steps.append(step)
        p_net *= step.p_conditional
        state = step.state_after

    summary = RunSummary(
        n_pulses=config.n_pulses,
        tau=config.tau,
        eta=config.eta,
        engine=config.engine,
        steps=steps,
        p_net=p_net,
        fidelity=fidelity_to_fock(state, config.n_pulses),
        purity=purity(state),
        mean_photon_number=mean_photon_number(state),
        final_state=state,
    )
    logger.debug(
        f"Run n={config.n_pulses}, tau={config.tau}, eta={config.eta} ({config.engine.value}): "
        f"p_net={summary.p_net:.6g}, fidelity={summary.fidelity:.6g}, purity={summary.purity:.6g}"
    )
    return summary


def run_oracle_crosscheck(config: IterationConfig) -> RunSummary:
    """Same run with every step computed by the three-mode oracle."""
    if config.n_pulses > ORACLE_MAX_PULSES:
        raise FockDomainError(f"Oracle runs are limited to {ORACLE_MAX_PULSES} pulses, got {config.n_pulses}")
    return run(config.model_copy(update={"engine": Engine.ORACLE}))
