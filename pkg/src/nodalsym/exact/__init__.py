"""Exact arithmetic: rationals, quadratic scalars, polynomials, series."""
from .scalars import Fraction, QuadraticScalar, as_fraction, is_zero, squarefree
from .poly import SparsePolynomial, grlex_key
from .ratfunc import RationalFunction, as_rational_function
from .series import HalfLaurentSeries, SeriesOrderError, series_substitute
from .parser import Context, ParseError, parse_expression

__all__ = [
    "Fraction", "QuadraticScalar", "as_fraction", "is_zero", "squarefree",
    "SparsePolynomial", "grlex_key", "RationalFunction", "as_rational_function",
    "HalfLaurentSeries", "SeriesOrderError", "series_substitute",
    "Context", "ParseError", "parse_expression",
]
