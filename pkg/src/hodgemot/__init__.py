"""Exact computations with mixed Hodge structures and their Hodge 1-motives."""

__version__ = "0.1.0"
