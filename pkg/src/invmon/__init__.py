"""Finite inverse monoids, their Schützenberger graphs, relation modules and identities."""

__version__ = "0.1.0"
