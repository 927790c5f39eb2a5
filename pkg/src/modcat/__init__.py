"""Exact modular-category data: fusion rings, S/T matrices, and structural operations."""

__version__ = "0.1.0"
