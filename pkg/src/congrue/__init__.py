"""Congruence-based primality characterizations and their verification."""

__version__ = "0.1.0"
