"""Invariant hulls of imprecise states and CPIH resilient consensus in the plane."""

__version__ = "0.1.0"
