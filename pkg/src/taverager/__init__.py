"""Averaging t-structures in piecewise hereditary derived categories."""

__version__ = "0.1.0"
