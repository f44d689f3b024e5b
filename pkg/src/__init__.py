"""Exact-arithmetic workbench for linear stability of coherent systems on P^1."""

__version__ = "0.1.0"
