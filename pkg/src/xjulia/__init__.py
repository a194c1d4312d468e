"""Exceptional Jacobi families, their Julia sets, and equilibrium-measure
diagnostics."""

from .dynamics import (BrolinSample, EscapeData, RasterGrid, brolin_sample,
                       escape_radius, escape_raster, forward_invariance_check,
                       preimage_count_in_set, raster_to_pgm)
from .errors import (ConfigError, ConvergenceError, NodeConvergenceError,
                     ValidationError, XjuliaError)
from .exceptional import (DarbouxData, ExceptionalWeight, eval_exceptional,
                          leading_coeff_exceptional, make_x1_preset,
                          monomial_coeffs, sigma_n, sigma_n_closed_form,
                          verify_span_property, weight)
from .jacobi import (DEGREE_CAP, JacobiParams, QuadratureRule,
                     eval_jacobi_derivative, eval_orthonormal_jacobi,
                     gauss_jacobi_rule, leading_coeff_jacobi)
from .measures import (EmpiricalMeasure, arcsine_cdf, arcsine_quantiles,
                       chebyshev_moments, energy, green_complement_interval,
                       ks_distance_real, log_potential)
from .poly import Poly
from .rootfind import ZeroClassification, classify_zeros, roots, zero_counting_measure

__version__ = "0.1.0"

__all__ = [
    "BrolinSample", "ConfigError", "ConvergenceError", "DEGREE_CAP",
    "DarbouxData", "EmpiricalMeasure", "EscapeData", "ExceptionalWeight",
    "JacobiParams", "NodeConvergenceError", "Poly", "QuadratureRule",
    "RasterGrid", "ValidationError", "XjuliaError", "ZeroClassification",
    "arcsine_cdf", "arcsine_quantiles", "brolin_sample", "chebyshev_moments",
    "classify_zeros", "energy", "escape_radius", "escape_raster",
    "eval_exceptional", "eval_jacobi_derivative", "eval_orthonormal_jacobi",
    "forward_invariance_check", "gauss_jacobi_rule",
    "green_complement_interval", "ks_distance_real", "leading_coeff_exceptional",
    "leading_coeff_jacobi", "log_potential", "make_x1_preset", "monomial_coeffs",
    "preimage_count_in_set", "raster_to_pgm", "roots", "sigma_n",
    "sigma_n_closed_form", "verify_span_property", "weight",
    "zero_counting_measure",
]
