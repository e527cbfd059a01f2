"""Dagger-categorical toolkit for reversible monadic computing."""

__version__ = "0.1.0"
