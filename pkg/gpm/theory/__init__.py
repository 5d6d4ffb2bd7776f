"""Closed-form predictions"""

from .predictions import (
    Prediction,
    concentration_band,
    connectivity_scale,
    eq31_probability,
    expected_L,
    isolation_probability,
    max_degree_exponent,
    max_degree_scale,
    pam_ratio,
    predict_all,
    triangle_expectation_pam_reference,
    triangle_slope,
    triangle_slope_kernel,
    validate_events,
)

__all__ = [
    "Prediction",
    "concentration_band",
    "connectivity_scale",
    "eq31_probability",
    "expected_L",
    "isolation_probability",
    "max_degree_exponent",
    "max_degree_scale",
    "pam_ratio",
    "predict_all",
    "triangle_expectation_pam_reference",
    "triangle_slope",
    "triangle_slope_kernel",
    "validate_events",
]
