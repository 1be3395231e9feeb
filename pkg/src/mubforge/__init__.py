"""Stabilizer MUBs, symplectic spreads, Clifford labels and sharp covariance."""

__version__ = "0.1.0"
