"""Deciding supersingularity of elliptic curves over F_{p^2}."""

__version__ = "0.1.0"
