"""Shared Pydantic models for loop runs and their JSON summaries."""

from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from fockloop.models.state import DiagonalFockState, Efficiency, FidelityValue, Probability, PurityValue, Transmittance

SCHEMA_VERSION = 1


class Engine(str, Enum):
    """Backend computing a single photon-addition step."""
    ANALYTIC = "analytic"
    ORACLE = "oracle"


class IterationConfig(BaseModel):
    """A train of single-photon pulses fed through the loop."""

    model_config = ConfigDict(frozen=True)

    n_pulses: int = Field(..., ge=1, description="Number of single-photon pulses")
    tau: Transmittance
    eta: Efficiency
    engine: Engine = Engine.ANALYTIC


class StepResult(BaseModel):
    """Outcome of one conditional photon addition."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=1, description="1-based step number")
    p_conditional: Probability = Field(..., description="No-click probability given all earlier steps succeeded")
    fidelity: FidelityValue = Field(..., description="Overlap of the post-step state with |index>")
    state_after: DiagonalFockState


class RunSummary(BaseModel):
    """Complete n-pulse run, accepted only if the detector never clicked."""

    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1] = Field(SCHEMA_VERSION, alias="schema")
    n_pulses: int
    tau: float
    eta: float
    engine: Engine
    steps: list[StepResult]
    p_net: Probability
    fidelity: FidelityValue
    purity: PurityValue
    mean_photon_number: float
    final_state: DiagonalFockState

    @property
    def top_weight_probability(self) -> float:
        """Probability of ending in exactly |n>; independent of the detector efficiency."""
        return self.fidelity * self.p_net
