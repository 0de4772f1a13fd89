"""Nonclassicality witnesses for the four-preparation, two-measurement scenario."""
__version__ = "0.1.0"
