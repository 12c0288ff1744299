"""Exact arithmetic for weak Jacobi forms, Calabi-Yau elliptic genera and
Siegel paramodular lifts.

The library works with sparse Laurent-Puiseux series over big integers in
two variables (q, y) or three (q, y, s), with exponents stored in 1/24,
1/4 and 1/24 units respectively so that every computation stays in exact
integer (or Gaussian-integer / rational) arithmetic.
"""

from .errors import (
    IdentityError,
    InexactDivisionError,
    JacobiLiftError,
    PrecisionError,
    RingMismatchError,
    RingPromotionError,
    ValidationError,
)
from .genpoly import GeneratorPolynomial, parse_generator_polynomial
from .genus import (
    CYInvariants,
    ENRIQUES,
    K3,
    chi_y_polynomial,
    divisibility_report,
    elliptic_genus,
    relation_check,
    special_value_suite,
    xi06_torsion_values,
)
from .jacobi import (
    Decomposition,
    JacobiForm,
    basis_psi,
    decompose,
    divide_by_xi06,
    generator,
    hecke_t0_2,
    hecke_tminus,
    linear_residuals,
    phi_threehalf,
    phi_weak_weight_minus1,
    psi2_variant,
    specialize_center,
    specialize_torsion,
    taylor_coeffs,
    theta_jacobi,
    xi06,
)
from .lifts import (
    SiegelSeries,
    arithmetic_lift,
    assembly_check_d4,
    assembly_check_d8,
    delta11_identity_check,
    delta_half_theta,
    e_form,
    exp_lift,
    exp_lift_homomorphic,
    factorization_product,
    hodge_anomaly,
    humbert_multiplicity,
    lift_window_for,
    quotient_reduction_check,
    siegel_omega_half_shift,
    siegel_scale,
    siegel_theta_constant,
    sqeg,
    symmetric_product_genus,
    theta_product_delta5_squared,
    window_equal,
)
from .modular import discriminant_form, eta_power, eta_quotient, theta_constant
from .rings import GaussianInt
from .series import Series, series_from_dict, series_to_dict
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "CYInvariants",
    "Decomposition",
    "ENRIQUES",
    "GaussianInt",
    "GeneratorPolynomial",
    "IdentityError",
    "InexactDivisionError",
    "JacobiForm",
    "JacobiLiftError",
    "K3",
    "PrecisionError",
    "RingMismatchError",
    "RingPromotionError",
    "Series",
    "SiegelSeries",
    "ValidationError",
    "arithmetic_lift",
    "assembly_check_d4",
    "assembly_check_d8",
    "basis_psi",
    "chi_y_polynomial",
    "decompose",
    "delta11_identity_check",
    "delta_half_theta",
    "discriminant_form",
    "divide_by_xi06",
    "divisibility_report",
    "e_form",
    "elliptic_genus",
    "eta_power",
    "eta_quotient",
    "exp_lift",
    "exp_lift_homomorphic",
    "factorization_product",
    "generator",
    "hecke_t0_2",
    "hecke_tminus",
    "hodge_anomaly",
    "humbert_multiplicity",
    "linear_residuals",
    "lift_window_for",
    "parse_generator_polynomial",
    "phi_threehalf",
    "phi_weak_weight_minus1",
    "psi2_variant",
    "quotient_reduction_check",
    "relation_check",
    "run_suite",
    "series_from_dict",
    "series_to_dict",
    "siegel_omega_half_shift",
    "siegel_scale",
    "siegel_theta_constant",
    "special_value_suite",
    "specialize_center",
    "specialize_torsion",
    "sqeg",
    "symmetric_product_genus",
    "taylor_coeffs",
    "theta_constant",
    "theta_jacobi",
    "theta_product_delta5_squared",
    "window_equal",
    "xi06",
    "xi06_torsion_values",
]
