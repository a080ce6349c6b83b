"""Combinatorics and normalization utilities for photon-number states."""

import logging
import math

import numpy as np
from scipy.special import comb, gammaln

from fockloop.models.state import DiagonalFockState, clamp_unit
from fockloop.utils.errors import DegenerateStateError, FockDomainError

logger = logging.getLogger(__name__)

# Above this size binomials go through log-gamma instead of exact integers.
EXACT_BINOMIAL_LIMIT = 60


def log_factorial(n: int) -> float:
    """ln(n!) via the log-gamma function."""
    if n < 0:
        raise FockDomainError(f"Factorial of negative number {n}")
    return float(gammaln(n + 1))


def binomial(n: int, k: int) -> float:
    """C(n, k) as a float; exact for n <= 60.

    Raises:
        FockDomainError: If k is outside 0..n.
    """
    if n < 0 or k < 0 or k > n:
        raise FockDomainError(f"Binomial C({n}, {k}) is undefined")
    if n <= EXACT_BINOMIAL_LIMIT:
        return float(comb(n, k, exact=True))
    return math.exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k))


def normalize(state: DiagonalFockState) -> tuple[DiagonalFockState, float]:
    """Rescale a diagonal state to unit trace.

    Returns:
        The normalized state and the original trace, read as the weight of the branch.

    Raises:
        DegenerateStateError: If every weight is zero.
    """
    probs = state.as_array()
    norm = float(np.sum(probs))
    if norm <= 0.0:
        raise DegenerateStateError("Cannot normalize a state with zero total weight")
    return DiagonalFockState(probs=probs / norm), norm


def purity(state: DiagonalFockState) -> float:
    """Tr(rho^2), the sum of squared weights for a diagonal state."""
    probs = state.as_array()
    return clamp_unit(float(np.dot(probs, probs)))


def fidelity_to_fock(state: DiagonalFockState, target: int) -> float:
    """Overlap <target|rho|target>, i.e. the diagonal entry at `target`."""
    if target < 0 or target > state.cutoff:
        raise FockDomainError(f"Target photon number {target} exceeds cutoff {state.cutoff}")
    return clamp_unit(state.probs[target])


def mean_photon_number(state: DiagonalFockState) -> float:
    probs = state.as_array()
    return float(np.dot(np.arange(probs.size), probs))
