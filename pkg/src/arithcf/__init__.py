"""Arithmetic functions, their residue sequences, and the transcendental
continued fractions built from those sequences."""

__version__ = "0.1.0"
