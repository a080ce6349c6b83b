"""Tests for the brute-force three-mode simulator and its agreement with the closed forms."""

import numpy as np
import pytest
from pydantic import ValidationError

from fockloop.analytic_step.main import step_coefficients
from fockloop.oracle_sim.main import (
    BeamSplitterSpec,
    SignConvention,
    ThreeModeState,
    apply_beam_splitter,
    oracle_single_step,
    prepare_input,
    project_vacuum_mode2,
    trace_out_mode3,
)
from fockloop.utils.errors import FockDomainError, PreconditionError

ORACLE_GRID = np.linspace(0.05, 0.95, 9)


def _basis_state(cutoff: int, *index: int) -> ThreeModeState:
    amps = np.zeros((cutoff + 1,) * 3)
    amps[index] = 1.0
    return ThreeModeState(amps=amps)


def _random_state(rng: np.random.Generator, cutoff: int) -> ThreeModeState:
    """Random normalized state with at most `cutoff` photons in total."""
    amps = rng.normal(size=(cutoff + 1,) * 3)
    totals = np.add.outer(np.add.outer(np.arange(cutoff + 1), np.arange(cutoff + 1)), np.arange(cutoff + 1))
    amps[totals > cutoff] = 0.0
    return ThreeModeState(amps=amps / np.sqrt(np.sum(amps**2)))


def test_prepare_input():
    state = prepare_input(2, 4)
    assert state.amps[2, 1, 0] == 1.0
    assert state.norm_squared == 1.0
    assert prepare_input(0, 4).amps[0, 1, 0] == 1.0


def test_prepare_input_rejects_small_cutoff():
    with pytest.raises(FockDomainError):
        prepare_input(5, 4)


def test_single_photon_split():
    spec = BeamSplitterSpec(mode_a=0, mode_b=1, transmittance=0.5)
    out = apply_beam_splitter(_basis_state(3, 0, 1, 0), spec)
    assert out.amps[1, 0, 0] == pytest.approx(1 / np.sqrt(2))
    assert out.amps[0, 1, 0] == pytest.approx(1 / np.sqrt(2))


def test_hong_ou_mandel_dip():
    spec = BeamSplitterSpec(mode_a=0, mode_b=1, transmittance=0.5)
    out = apply_beam_splitter(_basis_state(3, 1, 1, 0), spec)
    assert abs(out.amps[1, 1, 0]) < 1e-14
    assert out.amps[2, 0, 0] ** 2 + out.amps[0, 2, 0] ** 2 == pytest.approx(1.0, abs=1e-14)


def test_fully_transmissive_splitter_is_identity():
    rng = np.random.default_rng(3)
    state = _random_state(rng, 4)
    for convention in SignConvention:
        spec = BeamSplitterSpec(mode_a=1, mode_b=2, transmittance=1.0, sign_convention=convention)
        np.testing.assert_allclose(apply_beam_splitter(state, spec).amps, state.amps, atol=1e-15)


def test_fully_reflective_splitter_swaps_modes_with_sign():
    spec = BeamSplitterSpec(mode_a=0, mode_b=1, transmittance=0.0)
    out = apply_beam_splitter(_basis_state(3, 2, 0, 1), spec)
    assert out.amps[0, 2, 1] ** 2 == pytest.approx(1.0)


def test_unitarity_and_photon_number_conservation():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        cutoff = int(rng.integers(2, 6))
        state = _random_state(rng, cutoff)
        mode_a, mode_b = rng.choice(3, size=2, replace=False)
        spec = BeamSplitterSpec(
            mode_a=int(mode_a),
            mode_b=int(mode_b),
            transmittance=float(rng.random()),
            sign_convention=SignConvention.FIRST_ROW if rng.random() < 0.5 else SignConvention.SECOND_ROW,
        )
        out = apply_beam_splitter(state, spec)
        assert out.norm_squared == pytest.approx(1.0, abs=1e-12)
        for total in range(cutoff + 1):
            block_in = state.amps[_total_mask(cutoff, total)]
            block_out = out.amps[_total_mask(cutoff, total)]
            assert np.sum(block_out**2) == pytest.approx(np.sum(block_in**2), abs=1e-12)


def _total_mask(cutoff: int, total: int) -> np.ndarray:
    r = np.arange(cutoff + 1)
    return np.add.outer(np.add.outer(r, r), r) == total


def test_beam_splitter_raises_on_overflow():
    spec = BeamSplitterSpec(mode_a=0, mode_b=1, transmittance=0.5)
    with pytest.raises(FockDomainError):
        apply_beam_splitter(_basis_state(2, 2, 2, 0), spec)


def test_beam_splitter_spec_needs_distinct_modes():
    with pytest.raises(ValidationError):
        BeamSplitterSpec(mode_a=1, mode_b=1, transmittance=0.5)


def test_project_vacuum_mode2():
    kept, p = project_vacuum_mode2(_basis_state(3, 2, 0, 1))
    assert p == 1.0
    assert kept.amps[2, 0, 1] == 1.0
    dropped, p = project_vacuum_mode2(_basis_state(3, 2, 1, 0))
    assert p == 0.0
    assert not np.any(dropped.amps)


def test_trace_out_mode3():
    assert trace_out_mode3(_basis_state(3, 3, 0, 0)).probs == (0.0, 0.0, 0.0, 1.0)
    amps = np.zeros((2, 2, 2))
    amps[1, 0, 0], amps[0, 0, 1] = 0.6, 0.8
    weights = trace_out_mode3(ThreeModeState(amps=amps)).probs
    assert weights == pytest.approx((0.64, 0.36))


def test_trace_out_mode3_requires_dark_detector_arm():
    with pytest.raises(PreconditionError):
        trace_out_mode3(_basis_state(3, 0, 1, 0))


def test_full_pipeline_ideal_probability():
    assert oracle_single_step(1, 0.5, 1.0).p_noclick == pytest.approx(0.5, abs=1e-14)


def test_oracle_single_step_examples():
    assert oracle_single_step(0, 0.7, 0.9).p_noclick == pytest.approx(0.37, abs=1e-12)
    np.testing.assert_allclose(oracle_single_step(2, 0.5, 1.0).c, [0, 0, 0, 0.375], atol=1e-14)


@pytest.mark.parametrize("n", range(7))
def test_oracle_matches_closed_form_on_grid(n: int):
    for tau in ORACLE_GRID:
        for eta in ORACLE_GRID:
            oracle = oracle_single_step(n, float(tau), float(eta))
            analytic = step_coefficients(n, float(tau), float(eta))
            assert oracle.p_noclick == pytest.approx(analytic.p_noclick, abs=1e-10)
            np.testing.assert_allclose(oracle.c / oracle.p_noclick, analytic.c / analytic.p_noclick, atol=1e-10)


def test_oracle_matches_closed_form_with_larger_cutoff():
    oracle = oracle_single_step(4, 0.6, 0.75, cutoff=8)
    np.testing.assert_allclose(oracle.c, step_coefficients(4, 0.6, 0.75).c, atol=1e-10)
