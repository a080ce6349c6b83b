"""Equivalence checks between the closed forms and the brute-force oracle."""
