"""Tests for the closed-form photon-addition step."""

import numpy as np
import pytest

from fockloop.analytic_step.main import (
    ideal_net_probability,
    ideal_optimal_tau,
    step_coefficients,
    step_fidelity,
    step_probability,
)
from fockloop.utils.errors import FockDomainError, UndefinedFidelityError

GRID = np.linspace(0.0, 1.0, 21)


@pytest.mark.parametrize("n", range(11))
def test_ideal_balanced_step_law(n: int):
    assert step_probability(n, 0.5, 1.0) == pytest.approx((n + 1) * 2.0 ** (-n - 1), abs=1e-13)


@pytest.mark.parametrize("n, tau, eta, expected", [
    (1, 0.5, 1.0, 0.5),
    (3, 0.5, 1.0, 0.25),
    (0, 0.7, 0.9, 0.37),
])
def test_step_probability_examples(n: int, tau: float, eta: float, expected: float):
    assert step_probability(n, tau, eta) == pytest.approx(expected, abs=1e-12)


def test_step_probability_degenerate_n0():
    assert step_probability(0, 0.0, 1.0) == 1.0


def test_step_probability_rejects_out_of_range():
    with pytest.raises(FockDomainError):
        step_probability(1, 1.2, 0.5)


def test_step_coefficients_n0():
    tau, eta = 0.3, 0.6
    coeffs = step_coefficients(0, tau, eta)
    np.testing.assert_allclose(coeffs.c, [tau * (1 - eta), 1 - tau], atol=1e-15)
    assert coeffs.p_noclick == pytest.approx(1 - tau * eta, abs=1e-15)


def test_step_coefficients_ideal_detector():
    coeffs = step_coefficients(2, 0.5, 1.0)
    np.testing.assert_allclose(coeffs.c, [0, 0, 0, 0.375], atol=1e-15)
    assert coeffs.p_noclick == pytest.approx(0.375)


@pytest.mark.parametrize("n", range(11))
def test_coefficients_sum_to_probability_on_grid(n: int):
    for tau in GRID:
        for eta in GRID:
            coeffs = step_coefficients(n, float(tau), float(eta))
            assert coeffs.c.size == n + 2
            assert np.all(coeffs.c >= 0.0)
            assert coeffs.p_noclick == pytest.approx(step_probability(n, float(tau), float(eta)), abs=1e-10)
            assert coeffs.c[-1] == pytest.approx(tau**n * (1 - tau) * (n + 1), abs=1e-15)


def test_coefficients_match_probability_lossy_point():
    assert step_coefficients(3, 0.4, 0.8).p_noclick == pytest.approx(step_probability(3, 0.4, 0.8), abs=1e-12)


@pytest.mark.parametrize("n", range(8))
def test_ideal_detector_gives_pure_output(n: int):
    for tau in (0.1, 0.35, 0.5, 0.9):
        coeffs = step_coefficients(n, tau, 1.0)
        assert np.all(coeffs.c[:-1] == 0.0)
        assert step_fidelity(n, tau, 1.0) == pytest.approx(1.0)


@pytest.mark.parametrize("n", range(8))
def test_dead_detector_never_clicks(n: int):
    for tau in GRID:
        assert step_probability(n, float(tau), 0.0) == pytest.approx(1.0, abs=1e-13)


def test_step_fidelity_examples():
    assert step_fidelity(2, 0.5, 1.0) == pytest.approx(1.0)
    assert step_fidelity(0, 0.5, 0.5) == pytest.approx(2 / 3)
    assert step_fidelity(3, 0.3, 0.9) == pytest.approx(step_coefficients(3, 0.3, 0.9).fidelity, abs=1e-12)


def test_step_fidelity_undefined_when_always_clicking():
    with pytest.raises(UndefinedFidelityError):
        step_fidelity(0, 1.0, 1.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_ideal_net_probability_is_product_of_steps(n: int):
    for tau in (0.2, 0.5, 0.8):
        product = np.prod([step_probability(k, tau, 1.0) for k in range(n)])
        assert ideal_net_probability(n, tau) == pytest.approx(product, rel=1e-12)


def test_ideal_optimal_tau_maximizes_net_probability():
    for n in (2, 3, 4, 5):
        best = ideal_optimal_tau(n)
        for offset in (-1e-3, 1e-3):
            assert ideal_net_probability(n, best) > ideal_net_probability(n, best + offset)
    assert ideal_optimal_tau(3) == 0.5
