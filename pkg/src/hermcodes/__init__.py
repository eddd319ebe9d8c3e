"""Hermitian one-point codes over GF(q^2), their duals and minimum-weight words."""

from .codes import BudgetExceeded, Budgets, LinearCode, dual, min_distance, puncture, words_supported_within
from .cohomology import ZeroScheme, classify_h1_positive, h0_h1, intersection_degree, kernel_h1_identity
from .geometry import build_curve, classify_lines, parabola_census
from .gf import build_field, hermitian_field
from .onepoint import CodeSpec, build_code, build_code_projective, designed_distance, dual_index, m_to_da

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Budgets",
    "CodeSpec",
    "LinearCode",
    "ZeroScheme",
    "build_code",
    "build_code_projective",
    "build_curve",
    "build_field",
    "classify_h1_positive",
    "classify_lines",
    "designed_distance",
    "dual",
    "dual_index",
    "h0_h1",
    "hermitian_field",
    "intersection_degree",
    "kernel_h1_identity",
    "m_to_da",
    "min_distance",
    "parabola_census",
    "puncture",
    "words_supported_within",
]
