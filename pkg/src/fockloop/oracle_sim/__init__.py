"""Brute-force three-mode Fock-space simulation of one photon-addition step."""
