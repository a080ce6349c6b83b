"""Three-mode state-vector simulation of one photon-addition step.

Modes are indexed 0, 1, 2 here: 0 is the loop mode, 1 the detector arm, 2 the loss
mode of the detector. Every operation acts on basis states by expanding products of
creation operators, so nothing is truncated silently: a photon pushed past the cutoff
raises instead.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from fockloop.analytic_step.main import StepCoefficients
from fockloop.fock_core.main import binomial, log_factorial
from fockloop.models.state import DiagonalFockState, Transmittance, clamp_unit
from fockloop.utils.errors import FockDomainError, PreconditionError

logger = logging.getLogger(__name__)

LOOP_MODE, DETECTOR_MODE, LOSS_MODE = 0, 1, 2
COHERENCE_TOLERANCE = 1e-12


class SignConvention(str, Enum):
    """Which row of the real rotation carries the minus sign."""
    FIRST_ROW = "first-row"  # a† = √t A − √(1−t) B,  b† = √(1−t) A + √t B
    SECOND_ROW = "second-row"  # a† = √t A + √(1−t) B,  b† = −√(1−t) A + √t B


class BeamSplitterSpec(BaseModel):
    """Real two-mode beam splitter acting on `mode_a` and `mode_b` of a three-mode state."""

    model_config = ConfigDict(frozen=True)

    mode_a: int = Field(..., ge=0, le=2)
    mode_b: int = Field(..., ge=0, le=2)
    transmittance: Transmittance
    sign_convention: SignConvention = SignConvention.FIRST_ROW

    @model_validator(mode="after")
    def _distinct_modes(self) -> "BeamSplitterSpec":
        if self.mode_a == self.mode_b:
            raise ValueError(f"Beam splitter needs two distinct modes, got {self.mode_a} twice")
        return self


@dataclass(frozen=True)
class ThreeModeState:
    """Real amplitudes over |n0, n1, n2> with every n below or equal to the cutoff."""
    amps: np.ndarray

    def __post_init__(self):
        if self.amps.ndim != 3 or len(set(self.amps.shape)) != 1:
            raise FockDomainError(f"Expected a cubic amplitude tensor, got shape {self.amps.shape}")
        if not np.isrealobj(self.amps):
            raise FockDomainError("Amplitudes must be real: every beam splitter here is a real rotation")

    @property
    def cutoff(self) -> int:
        return self.amps.shape[0] - 1

    @property
    def norm_squared(self) -> float:
        return float(np.sum(self.amps**2))

    def photon_totals(self) -> set[int]:
        """Total photon numbers n0 + n1 + n2 present in the support."""
        return {int(sum(index)) for index in np.argwhere(self.amps != 0.0)}


def prepare_input(n: int, cutoff: int) -> ThreeModeState:
    """|n, 1, 0>: n photons in the loop, one fresh photon, vacuum in the loss mode."""
    if n < 0:
        raise FockDomainError(f"Photon number must be non-negative, got {n}")
    if n + 1 > cutoff:
        raise FockDomainError(f"Cutoff {cutoff} cannot hold the {n + 1} photons of |{n},1,0>")
    amps = np.zeros((cutoff + 1,) * 3)
    amps[n, 1, 0] = 1.0
    return ThreeModeState(amps=amps)


@cache
def _expansion(n_a: int, n_b: int, transmittance: float, sign_convention: SignConvention) -> tuple[float, ...]:
    """Output amplitudes of |n_a, n_b>, indexed by the photon number left in mode a."""
    r, s = np.sqrt(transmittance), np.sqrt(1.0 - transmittance)
    if sign_convention is SignConvention.FIRST_ROW:
        (alpha, beta), (gamma, delta) = (r, -s), (s, r)
    else:
        (alpha, beta), (gamma, delta) = (r, s), (-s, r)

    first = np.array([binomial(n_a, i) * alpha**i * beta ** (n_a - i) for i in range(n_a + 1)])
    second = np.array([binomial(n_b, j) * gamma**j * delta ** (n_b - j) for j in range(n_b + 1)])
    coefficients = np.convolve(first, second)

    total = n_a + n_b
    log_norm = log_factorial(n_a) + log_factorial(n_b)
    scale = np.array([np.exp(0.5 * (log_factorial(m) + log_factorial(total - m) - log_norm)) for m in range(total + 1)])
    return tuple(float(v) for v in coefficients * scale)


def apply_beam_splitter(state: ThreeModeState, spec: BeamSplitterSpec) -> ThreeModeState:
    """Transform every populated basis state through the beam splitter.

    Raises:
        FockDomainError: If a non-zero output amplitude lands past the cutoff.
    """
    cutoff = state.cutoff
    out = np.zeros_like(state.amps)
    for index in np.argwhere(state.amps != 0.0):
        source = tuple(int(i) for i in index)
        amplitude = state.amps[source]
        n_a, n_b = source[spec.mode_a], source[spec.mode_b]
        total = n_a + n_b
        weights = _expansion(n_a, n_b, spec.transmittance, spec.sign_convention)
        for m, weight in enumerate(weights):
            if weight == 0.0:
                continue
            if m > cutoff or total - m > cutoff:
                raise FockDomainError(
                    f"Beam splitter on modes ({spec.mode_a}, {spec.mode_b}) overflows cutoff {cutoff} from {source}"
                )
            target = list(source)
            target[spec.mode_a], target[spec.mode_b] = m, total - m
            out[tuple(target)] += amplitude * weight
    return ThreeModeState(amps=out)


def project_vacuum_mode2(state: ThreeModeState) -> tuple[ThreeModeState, float]:
    """Keep only the components where the detector arm holds no photon.

    Returns:
        The unnormalized projected state and its squared norm, the no-click probability.
    """
    amps = np.zeros_like(state.amps)
    amps[:, 0, :] = state.amps[:, 0, :]
    projected = ThreeModeState(amps=amps)
    return projected, clamp_unit(projected.norm_squared)


def trace_out_mode3(state: ThreeModeState) -> DiagonalFockState:
    """Reduced (unnormalized) loop-mode state after discarding the loss mode.

    Raises:
        PreconditionError: If the detector arm is populated, or the reduced state has coherences.
    """
    if np.any(state.amps[:, 1:, :] != 0.0):
        raise PreconditionError("Tracing the loss mode requires vacuum in the detector arm")
    surviving = state.amps[:, 0, :]
    reduced = surviving @ surviving.T
    off_diagonal = reduced - np.diag(np.diag(reduced))
    if np.max(np.abs(off_diagonal), initial=0.0) > COHERENCE_TOLERANCE:
        raise PreconditionError("Reduced loop-mode state is not diagonal")
    return DiagonalFockState(probs=np.diag(reduced))


def oracle_single_step(n: int, tau: float, eta: float, cutoff: int | None = None) -> StepCoefficients:
    """Brute-force counterpart of `fockloop.analytic_step.main.step_coefficients`."""
    cutoff = n + 2 if cutoff is None else cutoff
    main_splitter = BeamSplitterSpec(mode_a=LOOP_MODE, mode_b=DETECTOR_MODE, transmittance=tau)
    loss_splitter = BeamSplitterSpec(
        mode_a=DETECTOR_MODE, mode_b=LOSS_MODE, transmittance=eta, sign_convention=SignConvention.SECOND_ROW,
    )

    state = prepare_input(n, cutoff)
    state = apply_beam_splitter(state, main_splitter)
    state = apply_beam_splitter(state, loss_splitter)
    projected, p_noclick = project_vacuum_mode2(state)
    weights = trace_out_mode3(projected).as_array()

    if np.any(weights[n + 2:] != 0.0):
        raise PreconditionError(f"Loop mode populated above {n + 1} photons")
    logger.debug(f"Oracle step n={n}, tau={tau}, eta={eta}, cutoff={cutoff}: p_noclick={p_noclick:.6g}")
    return StepCoefficients(c=weights[: n + 2].copy(), p_noclick=p_noclick)
