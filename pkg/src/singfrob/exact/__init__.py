"""Exact arithmetic: polynomials, rational functions, series, residues, linear algebra."""

from .dual import Dual
from .linalg import (
    SingularMatrixError,
    char_poly,
    det_bareiss,
    mat_inverse,
    mat_mul,
    mat_solve,
    mat_solve_many,
    nullspace,
    rank,
)
from .parse import ParseError, parse_poly
from .poly import MultiPoly, Rational, VariableMismatch, grevlex_key, poly_arith, poly_partial
from .ratfunc import RationalFunction
from .residue import residue_sum_at_roots
from .series import (
    SeriesTruncationError,
    TruncSeries,
    residue_at_zero,
    series_exp,
    series_log,
    series_nth_root,
    series_reversion,
)

__all__ = [
    "Dual",
    "MultiPoly",
    "ParseError",
    "Rational",
    "RationalFunction",
    "SeriesTruncationError",
    "SingularMatrixError",
    "TruncSeries",
    "VariableMismatch",
    "char_poly",
    "det_bareiss",
    "grevlex_key",
    "mat_inverse",
    "mat_mul",
    "mat_solve",
    "mat_solve_many",
    "nullspace",
    "parse_poly",
    "poly_arith",
    "poly_partial",
    "rank",
    "residue_at_zero",
    "residue_sum_at_roots",
    "series_exp",
    "series_log",
    "series_nth_root",
    "series_reversion",
]
