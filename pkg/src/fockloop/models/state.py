"""Shared Pydantic models and scalar types for single-mode photon-number states."""

from typing import Annotated

import numpy as np
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, computed_field, field_validator

from fockloop.utils.errors import FockDomainError

# Floating-point cancellation in the squared step coefficients leaves tiny negatives.
CLAMP_TOLERANCE = 1e-12


def clamp_unit(value: float) -> float:
    """Clamp a probability-like value to [0, 1], rejecting anything beyond the tolerance."""
    value = float(value)
    if not -CLAMP_TOLERANCE <= value <= 1.0 + CLAMP_TOLERANCE:
        raise FockDomainError(f"Value {value!r} is outside [0, 1]")
    return min(max(value, 0.0), 1.0)


PhotonCount = Annotated[int, Field(ge=0, description="Photon number")]
Transmittance = Annotated[float, Field(ge=0.0, le=1.0, description="Beam-splitter transmittance")]
Efficiency = Annotated[float, Field(ge=0.0, le=1.0, description="Detector efficiency")]
Probability = Annotated[float, AfterValidator(clamp_unit)]
FidelityValue = Annotated[float, AfterValidator(clamp_unit)]
PurityValue = Annotated[float, AfterValidator(clamp_unit)]


class DiagonalFockState(BaseModel):
    """Single-mode state without coherences: a weight per photon number 0..cutoff.

    Weights need not sum to one; `fockloop.fock_core.main.normalize` produces the
    normalized form. Negative weights within `CLAMP_TOLERANCE` are clamped to zero.
    """

    model_config = ConfigDict(frozen=True)

    probs: tuple[float, ...] = Field(..., min_length=1, description="Weight per photon number")

    @field_validator("probs", mode="before")
    @classmethod
    def _coerce_array(cls, value):
        if isinstance(value, np.ndarray):
            return tuple(float(v) for v in value.ravel())
        return value

    @field_validator("probs")
    @classmethod
    def _clamp_negatives(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        for weight in value:
            if not np.isfinite(weight):
                raise ValueError(f"Non-finite weight {weight!r}")
            if weight < -CLAMP_TOLERANCE:
                raise ValueError(f"Negative weight {weight!r} beyond tolerance {CLAMP_TOLERANCE}")
        return tuple(max(weight, 0.0) for weight in value)

    @computed_field
    @property
    def cutoff(self) -> int:
        return len(self.probs) - 1

    @classmethod
    def vacuum(cls) -> "DiagonalFockState":
        return cls(probs=(1.0,))

    @classmethod
    def fock(cls, n: int, cutoff: int | None = None) -> "DiagonalFockState":
        """The pure number state |n> padded with zeros up to `cutoff`."""
        cutoff = n if cutoff is None else cutoff
        if n < 0 or n > cutoff:
            raise FockDomainError(f"Photon number {n} does not fit cutoff {cutoff}")
        probs = np.zeros(cutoff + 1)
        probs[n] = 1.0
        return cls(probs=probs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    @property
    def total(self) -> float:
        return float(np.sum(self.as_array()))
