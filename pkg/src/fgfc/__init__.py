"""Minimal primes of finitely generated ideals in polynomial rings over FGFC rings."""

__version__ = "0.1.0"
