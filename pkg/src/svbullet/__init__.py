"""Exact intersection products of projective cycles via the Stückrad-Vogel procedure."""

__version__ = "0.1.0"
