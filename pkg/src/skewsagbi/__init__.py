"""Verification toolkit for binomial edge rings of skew Ferrers diagrams."""

__version__ = "0.1.0"
