"""Legendre-series tools for checking L2-projection error bounds exactly and numerically."""
from .bound_checker import BoundKind, BoundReport, check_bound, sharpness_case
from .integrated_legendre import PsiIndex, primitive, psi
from .legendre_core import (
    LegendreSeries,
    endpoint_derivative,
    legendre,
    series_antiderivative,
    series_derivative,
    series_eval,
    series_inner_product,
)
from .projection import SAMPLE_FUNCTIONS, gauss_rule, get_function, project
from .qfamily import QPoly, q_norm_sq, q_poly

__all__ = [
    "BoundKind",
    "BoundReport",
    "LegendreSeries",
    "PsiIndex",
    "QPoly",
    "SAMPLE_FUNCTIONS",
    "check_bound",
    "endpoint_derivative",
    "gauss_rule",
    "get_function",
    "legendre",
    "primitive",
    "project",
    "psi",
    "q_norm_sq",
    "q_poly",
    "series_antiderivative",
    "series_derivative",
    "series_eval",
    "series_inner_product",
    "sharpness_case",
]
