"""
Padé approximation of the square-root operator and compatibility coefficients
"""
from .coefficients import (
    PadeSet,
    build_pade_set,
    pade_coefficients,
    pade_error_table,
    pade_sqrt,
    reduction_active_set,
    threshold_counts,
)
from .compatibility import compatibility_coefficients, surface_celerity

__all__ = [
    'PadeSet',
    'build_pade_set',
    'pade_coefficients',
    'pade_error_table',
    'pade_sqrt',
    'reduction_active_set',
    'threshold_counts',
    'compatibility_coefficients',
    'surface_celerity',
]
