"""Exact arithmetic kernels: polynomials over Q, gcd, and matrix algebra."""
from .poly import MultiPoly, default_names, parse_poly
from .gcd import poly_gcd
from .matrix import (
    PolyMatrix,
    adjugate,
    all_minors_vanish,
    det,
    exact_rank,
    poly_eval,
    random_point,
    rank_at,
)

__all__ = [
    "MultiPoly",
    "PolyMatrix",
    "adjugate",
    "all_minors_vanish",
    "default_names",
    "det",
    "exact_rank",
    "parse_poly",
    "poly_eval",
    "poly_gcd",
    "random_point",
    "rank_at",
]
