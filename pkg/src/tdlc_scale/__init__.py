"""Exact scale function and topological entropy for automorphisms of
Q_p^n, shift groups F^Z, and their Pontryagin duals."""

__version__ = "0.1.0"
