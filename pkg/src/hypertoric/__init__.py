"""Exact combinatorics of hypertoric wall-crossing."""
__version__ = "0.1.0"
