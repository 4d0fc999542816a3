"""Singular overpartitions, eta-quotients and checks of their congruences."""

__version__ = "0.1.0"
