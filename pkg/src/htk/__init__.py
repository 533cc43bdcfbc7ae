"""Exact structure-constant computations for Hopf-Galois objects and quantum torsors."""

__version__ = "0.1.0"
