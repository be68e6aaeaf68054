"""Exact Newton polyhedra, Newton numbers and toric resolution charts."""

__version__ = "0.1.0"
