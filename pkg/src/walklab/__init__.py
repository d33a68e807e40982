"""Exact walk-count invariants of graph vertices."""

__version__ = "0.1.0"
