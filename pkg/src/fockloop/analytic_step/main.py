"""Closed-form photon addition: |n> and |1> meet on a beam splitter, the detector sees vacuum.

Mode convention: the accumulated n-photon state enters port 1 and stays in the loop
with amplitude sqrt(tau); the fresh photon enters port 2; the detector, modelled as a
loss beam splitter of transmittance eta in front of an ideal detector, watches output
port 2 and the loss mode is traced out.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from fockloop.fock_core.main import binomial, log_factorial
from fockloop.models.state import clamp_unit
from fockloop.utils.errors import FockDomainError, UndefinedFidelityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepCoefficients:
    """Unnormalized diagonal of the loop mode after a no-click step from |n>.

    `c[j]` is the weight of |j> for j = 0..n+1; the weights sum to the no-click probability.
    """
    c: np.ndarray
    p_noclick: float

    @property
    def n(self) -> int:
        return self.c.size - 2

    @property
    def fidelity(self) -> float:
        if self.p_noclick <= 0.0:
            raise UndefinedFidelityError(f"No-click probability is zero for n={self.n}")
        return clamp_unit(self.c[-1] / self.p_noclick)


def _check_args(n: int, tau: float, eta: float) -> None:
    if n < 0:
        raise FockDomainError(f"Photon number must be non-negative, got {n}")
    if not 0.0 <= tau <= 1.0:
        raise FockDomainError(f"Transmittance must lie in [0, 1], got {tau}")
    if not 0.0 <= eta <= 1.0:
        raise FockDomainError(f"Efficiency must lie in [0, 1], got {eta}")


def step_probability(n: int, tau: float, eta: float) -> float:
    """Probability that the detector stays dark when |n> meets a single photon.

    p = (eta^2 tau (1-tau)(n+1) + 1 - eta) (eta tau + 1 - eta)^(n-1)
    """
    _check_args(n, tau, eta)
    base = eta * tau + 1.0 - eta
    if n == 0 and base == 0.0:
        # eta=1, tau=0: the n=0 expression simplifies to 1 - tau*eta
        return clamp_unit(1.0 - tau * eta)
    return clamp_unit((eta * eta * tau * (1.0 - tau) * (n + 1) + 1.0 - eta) * base ** (n - 1))


def step_coefficients(n: int, tau: float, eta: float) -> StepCoefficients:
    """Weights of |0>, |1>..|n> and |n+1> left in the loop after a no-click step.

    - |0>: every photon reached the detector and was lost, tau (1-tau)^n (1-eta)^(n+1) (n+1)
    - |k>, 1 <= k <= n: the remaining n-k+1 photons were lost,
      tau^(k-1) (1-tau)^(n-k) (1-eta)^(n-k+1) (n-k+1)! k!/n! [C(n,k) tau - C(n,k-1)(1-tau)]^2
    - |n+1>: nothing reached the detector, tau^n (1-tau)(n+1)
    """
    _check_args(n, tau, eta)
    loss = 1.0 - eta
    c = np.zeros(n + 2)
    c[0] = tau * (1.0 - tau) ** n * loss ** (n + 1) * (n + 1)
    for k in range(1, n + 1):
        interference = binomial(n, k) * tau - binomial(n, k - 1) * (1.0 - tau)
        multiplicity = math.exp(log_factorial(n - k + 1) + log_factorial(k) - log_factorial(n))
        c[k] = tau ** (k - 1) * (1.0 - tau) ** (n - k) * loss ** (n - k + 1) * multiplicity * interference**2
    c[n + 1] = tau**n * (1.0 - tau) * (n + 1)
    p_noclick = clamp_unit(float(np.sum(c)))
    logger.debug(f"Step n={n}, tau={tau}, eta={eta}: p_noclick={p_noclick:.6g}")
    return StepCoefficients(c=c, p_noclick=p_noclick)


def step_fidelity(n: int, tau: float, eta: float) -> float:
    """Overlap of the post-selected loop state with |n+1>.

    Raises:
        UndefinedFidelityError: If the no-click event has probability zero.
    """
    p = step_probability(n, tau, eta)
    if p <= 0.0:
        raise UndefinedFidelityError(f"No-click probability is zero for n={n}, tau={tau}, eta={eta}")
    return clamp_unit(tau**n * (1.0 - tau) * (n + 1) / p)


def ideal_net_probability(n_pulses: int, tau: float) -> float:
    """Net success probability with an ideal detector: n! (1-tau)^n tau^(n(n-1)/2).

    Also equals fidelity * p_net for any detector efficiency, since only the top
    photon-number component of the loop state feeds the next top component.
    """
    _check_args(n_pulses, tau, 1.0)
    return math.factorial(n_pulses) * (1.0 - tau) ** n_pulses * tau ** (n_pulses * (n_pulses - 1) // 2)


def ideal_optimal_tau(n_pulses: int) -> float:
    """Transmittance maximizing `ideal_net_probability`."""
    if n_pulses < 1:
        raise FockDomainError(f"Need at least one pulse, got {n_pulses}")
    return (n_pulses - 1) / (n_pulses + 1)
