"""Carry-lookahead adders compiled to measurement-based cluster-state layouts."""

__version__ = "0.1.0"
