"""Spaces of matrices of bounded rank and their tensors, in exact arithmetic."""

__version__ = "0.1.0"
