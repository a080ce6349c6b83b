"""Transmittance/efficiency parameter sweeps."""
