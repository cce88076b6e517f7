"""Elliptic divisibility sequences, Frey curves and the modular sieve."""

__version__ = "0.1.0"
