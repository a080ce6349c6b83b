"""Closed-form single photon addition with a beam splitter and a lossy detector."""
