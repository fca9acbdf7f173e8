"""Approximation algorithms and exact oracles for disk domination and linear K-cover."""

__version__ = "0.1.0"
