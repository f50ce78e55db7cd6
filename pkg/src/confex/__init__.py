"""Forbidden configurations in r-coloured matrices."""

__version__ = "0.1.0"
