"""Wigner functions of photon-number mixtures.

Convention: [x, p] = i with hbar = 1, vacuum quadrature variance 1/2 and W normalized
to unit integral, so that

    W_n(x, p) = (-1)^n / pi * exp(-(x^2 + p^2)) * L_n(2 (x^2 + p^2)).
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import laguerre
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.integrate import trapezoid
from scipy.special import eval_laguerre

from fockloop.models.state import DiagonalFockState
from fockloop.utils.errors import GridAccuracyError

logger = logging.getLogger(__name__)

# Largest tolerated deviation of the integrated Wigner function from one.
NORMALIZATION_WARNING = 0.05


class GridSpec(BaseModel):
    """Rectangular phase-space sampling grid."""

    model_config = ConfigDict(frozen=True)

    x_min: float = -5.0
    x_max: float = 5.0
    p_min: float = -5.0
    p_max: float = 5.0
    nx: int = Field(201, ge=2)
    n_p: int = Field(201, ge=2)

    @model_validator(mode="after")
    def _ordered_bounds(self) -> "GridSpec":
        if self.x_min >= self.x_max or self.p_min >= self.p_max:
            raise ValueError("Grid bounds must satisfy x_min < x_max and p_min < p_max")
        return self

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linspace(self.x_min, self.x_max, self.nx), np.linspace(self.p_min, self.p_max, self.n_p)


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """W sampled on a grid: `values[i, j] = W(x[i], p[j])`."""
    spec: GridSpec
    x: np.ndarray
    p: np.ndarray
    values: np.ndarray
    origin_value: float


class NegativityReport(BaseModel):
    """Integral and negativity diagnostics of a sampled Wigner function."""

    min_value: float
    min_x: float
    min_p: float
    origin_value: float
    integral: float
    negative_volume: float = Field(..., ge=0.0, description="Integral of max(-W, 0)")


def wigner_fock(n: int, x, p):
    """Wigner function of the pure number state |n>; works on scalars and arrays."""
    r2 = np.square(x) + np.square(p)
    return (-1) ** n / np.pi * np.exp(-r2) * eval_laguerre(n, 2.0 * r2)


def _mixture_values(state: DiagonalFockState, r2: np.ndarray) -> np.ndarray:
    probs = state.as_array()
    signs = np.where(np.arange(probs.size) % 2 == 0, 1.0, -1.0)
    return np.exp(-r2) / np.pi * laguerre.lagval(2.0 * r2, signs * probs)


def wigner_state(state: DiagonalFockState, spec: GridSpec | None = None) -> PhaseSpaceGrid:
    """Sum_k probs[k] W_k evaluated on the grid."""
    spec = GridSpec() if spec is None else spec
    x, p = spec.axes()
    r2 = np.add.outer(np.square(x), np.square(p))
    origin_value = float(_mixture_values(state, np.zeros(1))[0])
    return PhaseSpaceGrid(spec=spec, x=x, p=p, values=_mixture_values(state, r2), origin_value=origin_value)


def wigner_radial(state: DiagonalFockState, radii: np.ndarray) -> np.ndarray:
    """W along any ray through the origin; the mixture is rotationally symmetric."""
    return _mixture_values(state, np.square(np.asarray(radii, dtype=float)))


def negativity(grid: PhaseSpaceGrid) -> NegativityReport:
    """Integrate W and its negative part with the trapezoidal rule.

    Raises:
        GridAccuracyError: If the integral deviates from one by more than 0.05.
    """
    values = grid.values
    integral = float(trapezoid(trapezoid(values, grid.p, axis=1), grid.x))
    negative_volume = float(trapezoid(trapezoid(np.maximum(-values, 0.0), grid.p, axis=1), grid.x))
    if abs(integral - 1.0) > NORMALIZATION_WARNING:
        raise GridAccuracyError(
            f"Wigner function integrates to {integral:.4f} on this grid; widen or refine it"
        )

    i, j = np.unravel_index(np.argmin(values), values.shape)
    report = NegativityReport(
        min_value=float(values[i, j]),
        min_x=float(grid.x[i]),
        min_p=float(grid.p[j]),
        origin_value=grid.origin_value,
        integral=integral,
        negative_volume=negative_volume,
    )
    logger.debug(f"Wigner minimum {report.min_value:.6g} at ({report.min_x}, {report.min_p}), integral {integral:.6f}")
    return report
