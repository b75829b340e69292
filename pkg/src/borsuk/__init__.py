"""Exact verification of partition lower bounds from the Leech lattice minimal shell."""

__version__ = "0.1.0"
