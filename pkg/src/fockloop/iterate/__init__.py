"""Iterated photon addition over a train of single-photon pulses."""
