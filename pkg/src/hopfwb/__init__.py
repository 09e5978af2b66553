"""Finite-truncation workbench for weighted left regular representations of graded semigroup quotients."""
__version__ = "0.1.0"
