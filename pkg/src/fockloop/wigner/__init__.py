"""Wigner functions of diagonal Fock mixtures and negativity diagnostics."""
