"""Exact computations with semirings, tropical and monoid schemes, and their vector bundles."""

__version__ = "0.1.0"
