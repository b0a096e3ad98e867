"""Entanglement measures, SL-invariants and solvable spin-chain models."""

__version__ = "0.1.0"
