"""Exact polynomial algebra over the Gaussian rationals."""

from .matrix import PolyMatrix, discriminant, jacobian, leibniz_det, minors2x2, resultant, sylvester
from .parse import PolySyntaxError, format_poly, parse_poly
from .poly import Poly, Ring, RingMismatch, poly_prod, poly_sum
from .scalars import GaussRational, I, gauss, parse_scalar, rational

__all__ = [
    "GaussRational",
    "I",
    "Poly",
    "PolyMatrix",
    "PolySyntaxError",
    "Ring",
    "RingMismatch",
    "discriminant",
    "format_poly",
    "gauss",
    "jacobian",
    "leibniz_det",
    "minors2x2",
    "parse_poly",
    "parse_scalar",
    "poly_prod",
    "poly_sum",
    "rational",
    "resultant",
    "sylvester",
]
