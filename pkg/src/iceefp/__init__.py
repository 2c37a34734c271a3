"""Emptiness formation probability of the six-vertex model with domain-wall boundary conditions."""

__version__ = "0.1.0"
