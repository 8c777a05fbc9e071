"""Finite 2-group classification checks and imaginary quadratic screening."""

__version__ = "0.1.0"
