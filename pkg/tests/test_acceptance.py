"""End-to-end checks of the published figures of merit through the public API and CLI."""

import json

import numpy as np
import pytest
from typer.testing import CliRunner

from fockloop.analytic_step.main import step_coefficients, step_probability
from fockloop.cli import app
from fockloop.iterate.main import run, run_oracle_crosscheck
from fockloop.models.run import IterationConfig
from fockloop.optimize.main import Objective, OptimizeSpec, objective_function, optimize
from fockloop.oracle_sim.main import (
    BeamSplitterSpec,
    ThreeModeState,
    apply_beam_splitter,
    oracle_single_step,
    prepare_input,
)
from fockloop.wigner.main import negativity, wigner_state

runner = CliRunner()

GRID = np.linspace(0.05, 0.95, 9)


def test_ideal_step_law():
    for n in range(11):
        assert step_probability(n, 0.5, 1.0) == pytest.approx((n + 1) * 2.0 ** (-n - 1), abs=1e-13)


def test_three_photon_ideal_point():
    summary = run(IterationConfig(n_pulses=3, tau=0.5, eta=1.0))
    assert summary.p_net == pytest.approx(0.09375, abs=1e-12)
    assert summary.fidelity == 1.0
    assert summary.purity == 1.0


def test_three_photon_lossy_point():
    result = runner.invoke(app, ["run", "--n", "3", "--tau", "0.5", "--eta", "0.8"])
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)
    assert payload["fidelity"] == pytest.approx(0.67, abs=0.01)
    assert payload["p_net"] == pytest.approx(0.14, abs=0.01)


def test_oracle_equivalence():
    for n in range(7):
        for tau in GRID:
            for eta in GRID:
                closed, brute = step_coefficients(n, tau, eta), oracle_single_step(n, tau, eta)
                assert brute.p_noclick == pytest.approx(closed.p_noclick, abs=1e-10)
                np.testing.assert_allclose(brute.c / brute.p_noclick, closed.c / closed.p_noclick, atol=1e-10)
    for n in range(1, 5):
        for tau in np.linspace(0.05, 0.95, 5):
            for eta in np.linspace(0.05, 0.95, 5):
                config = IterationConfig(n_pulses=n, tau=tau, eta=eta)
                assert run_oracle_crosscheck(config).p_net == pytest.approx(run(config).p_net, abs=1e-9)


def test_normalization_and_unitarity():
    rng = np.random.default_rng(7)
    for _ in range(100):
        amps = np.zeros((5, 5, 5))
        for index in np.ndindex(amps.shape):
            if sum(index) <= 4:
                amps[index] = rng.normal()
        amps /= np.linalg.norm(amps)
        spec = BeamSplitterSpec(mode_a=0, mode_b=1, transmittance=float(rng.uniform()))
        out = apply_beam_splitter(ThreeModeState(amps=amps), spec)
        assert out.norm_squared == pytest.approx(1.0, abs=1e-12)
        assert out.photon_totals() <= {0, 1, 2, 3, 4}
    for n in (1, 3, 6):
        for tau, eta in ((0.3, 0.9), (0.5, 0.8), (0.8, 0.4)):
            summary = run(IterationConfig(n_pulses=n, tau=tau, eta=eta))
            assert all(abs(step.state_after.total - 1.0) <= 1e-10 for step in summary.steps)


def test_hong_ou_mandel():
    state = prepare_input(1, 3)
    out = apply_beam_splitter(state, BeamSplitterSpec(mode_a=0, mode_b=1, transmittance=0.5))
    assert abs(out.amps[1, 1, 0]) < 1e-14


def test_wigner_negativity_of_lossy_state():
    state = run(IterationConfig(n_pulses=3, tau=0.5, eta=0.8)).final_state
    report = negativity(wigner_state(state))
    assert report.min_value < 0.0
    assert report.integral == pytest.approx(1.0, abs=0.02)


def test_non_symmetric_splitter_advantage():
    spec = OptimizeSpec(n_pulses=4, eta=0.8, objective=Objective.FIDELITY, tau_resolution=1e-3)
    result = optimize(spec)
    values = np.array([point.value for point in result.curve])
    balanced = objective_function(spec)(0.5)
    if values.max() > balanced:
        assert result.objective_value > balanced
        assert result.tau_star != 0.5
    else:
        assert result.objective_value == pytest.approx(values.max())


def test_sweep_determinism():
    args = ["sweep", "--n", "3", "--tau-grid", "0:1:21", "--eta-grid", "0:1:21"]
    first, second = runner.invoke(app, args), runner.invoke(app, args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout_bytes == second.stdout_bytes
