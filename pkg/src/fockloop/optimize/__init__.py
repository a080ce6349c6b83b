"""Transmittance optimization for a fixed detector efficiency."""
