"""Exact-arithmetic verification engine for 2-cyclic permutation orbifolds."""

__version__ = "0.1.0"
