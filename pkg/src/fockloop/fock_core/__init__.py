"""Fock-space combinatorics and diagonal-state utilities."""
