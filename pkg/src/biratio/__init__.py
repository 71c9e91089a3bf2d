"""Exact and numerical workbench for birational maps of P1 x P1 with rotation-like real dynamics."""

__version__ = "0.1.0"
