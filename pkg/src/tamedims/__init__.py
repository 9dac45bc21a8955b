"""Exact tools for the dimensions of irreducible local Galois representations
with rational traces on inertia."""

__version__ = "0.1.0"
