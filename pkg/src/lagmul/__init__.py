"""Milnor-number sums of constrained critical points over exact fields."""

from .arith import QQ, FieldElement, FieldSpec
from .complexes import (
    GradedFreeComplex,
    eagon_northcott,
    graded_strand,
    h0_hilbert_check,
    koszul_complex,
    strand_homology,
    tensor_total,
)
from .critical import (
    ConstrainedSystem,
    HypothesisReport,
    brute_force_critical_points,
    check_hypotheses,
    lagrange_jacobian_dimension,
    milnor_sum,
    predicted_milnor_sum,
    proj_smooth_ci,
)
from .groebner import Ideal, Limits, groebner_basis
from .poly import Polynomial, Ring, euler_check
from .series import RationalGF, milnor_gf, series_coefficient

__all__ = [
    "QQ",
    "FieldElement",
    "FieldSpec",
    "GradedFreeComplex",
    "eagon_northcott",
    "graded_strand",
    "h0_hilbert_check",
    "koszul_complex",
    "strand_homology",
    "tensor_total",
    "ConstrainedSystem",
    "HypothesisReport",
    "brute_force_critical_points",
    "check_hypotheses",
    "lagrange_jacobian_dimension",
    "milnor_sum",
    "predicted_milnor_sum",
    "proj_smooth_ci",
    "Ideal",
    "Limits",
    "groebner_basis",
    "Polynomial",
    "Ring",
    "euler_check",
    "RationalGF",
    "milnor_gf",
    "series_coefficient",
]
