"""Exact spline spaces on polytopal complexes and their lattice-supported subspaces."""

__version__ = "0.1.0"
