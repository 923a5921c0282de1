"""Exact certification of the partial-Euler-product route to a prime bound."""

__version__ = "0.1.0"
