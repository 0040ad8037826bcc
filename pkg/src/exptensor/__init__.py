"""Exact computer algebra for exponential tensor modules of sl(n+1)."""

__version__ = "0.1.0"
