"""Exact computations on finite crystallographic root systems."""

__version__ = "0.1.0"
