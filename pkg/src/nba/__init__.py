"""Null bracket algebra prover for plane geometry in the conformal model."""

__version__ = "0.1.0"
