"""Exact integer linear algebra and polynomial root location."""

from .extnat import INFINITY, ExtNat, ext_abs, ext_prod
from .matrix import (
    DimensionError,
    IntMatrix,
    RankError,
    adjugate_inverse,
    as_matrix,
    det,
    det_rows,
    rank,
    rational_kernel,
    solve_exact,
)
from .poly import InvalidPolynomial, charpoly, count_real_roots, has_root_on_unit_circle
from .snf import SkewError, SNFResult, integer_kernel, skew_normal_form, smith_normal_form

__all__ = [
    "INFINITY", "ExtNat", "ext_abs", "ext_prod",
    "DimensionError", "IntMatrix", "RankError", "adjugate_inverse", "as_matrix", "det", "det_rows",
    "rank", "rational_kernel", "solve_exact",
    "InvalidPolynomial", "charpoly", "count_real_roots", "has_root_on_unit_circle",
    "SkewError", "SNFResult", "integer_kernel", "skew_normal_form", "smith_normal_form",
]
