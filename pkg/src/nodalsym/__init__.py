"""Exact computations for symmetric differentials on nodal surfaces."""
__version__ = "0.1.0"
