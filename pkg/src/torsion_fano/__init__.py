"""Noncyclic torsion baskets on Fano threefolds: enumeration of admissible
baskets, torsion-twisted Riemann-Roch Hilbert series, and Molien-series
verification of Fano-Enriques quotients."""

__version__ = "0.1.0"
