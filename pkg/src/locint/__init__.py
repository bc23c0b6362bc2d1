"""Exact equivariant localization on Hilbert schemes of points and symmetric products of curves."""

from .abelint import macdonald_integral, rk2_check, rk2_ck_term, theta_power, ttd_value
from .charalg import Character, char_dual, char_rank, chern_class, chern_series, euler_eval
from .hilbfix import (
    HilbFixedPoint,
    LocalizationOutcome,
    Partition,
    chi_top_check,
    co_degree,
    hilb_fixed_points,
    localize,
    tangent_char,
)
from .paperint import (
    IdentityReport,
    ms_term_n1,
    nested_term,
    p1p1_check,
    p1p1_lhs,
    vd_calc,
    weight_factor_p2,
    weight_factor_p3,
)
from .symcore import GradedPoly, LinearForm, Rational, poly_eval, poly_inverse, poly_mul
from .toric import chi_character, h0_character, line_bundle, make_surface

__version__ = "0.1.0"

__all__ = [
    "char_dual",
    "char_rank",
    "Character",
    "chern_class",
    "chern_series",
    "chi_character",
    "chi_top_check",
    "co_degree",
    "euler_eval",
    "GradedPoly",
    "h0_character",
    "hilb_fixed_points",
    "HilbFixedPoint",
    "IdentityReport",
    "line_bundle",
    "LinearForm",
    "LocalizationOutcome",
    "localize",
    "macdonald_integral",
    "make_surface",
    "ms_term_n1",
    "nested_term",
    "p1p1_check",
    "p1p1_lhs",
    "Partition",
    "poly_eval",
    "poly_inverse",
    "poly_mul",
    "Rational",
    "rk2_check",
    "rk2_ck_term",
    "tangent_char",
    "theta_power",
    "ttd_value",
    "vd_calc",
    "weight_factor_p2",
    "weight_factor_p3",
]
