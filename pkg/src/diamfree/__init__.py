"""Largest diameter-avoiding subsets of signed ternary lattices L_mkl."""

__version__ = "0.1.0"
