"""Exact-arithmetic classification of Serre-weight components and chart-level
verification of the underlying local geometry."""

__version__ = "0.1.0"
