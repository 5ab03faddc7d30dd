"""Exact dimension counts for finite type systems: symbol prolongations,
Tanaka prolongations, distribution symmetries and geodesic integrals."""

__version__ = "0.1.0"
