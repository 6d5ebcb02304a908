"""Turaev torsion of 3-manifolds and 3-orbifolds with exact arithmetic."""

__version__ = "0.1.0"
