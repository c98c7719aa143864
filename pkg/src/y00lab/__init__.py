"""Desk-scale laboratory for the Y-00 quantum-noise stream cipher."""

__version__ = "0.1.0"
