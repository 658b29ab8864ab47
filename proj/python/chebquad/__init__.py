"""Chebyshev-point and Gauss quadrature for Jacobi and log-Jacobi weights."""

from ._chebquad import (
    NumericalFailure,
    alias_table,
    convergence_study,
    integrate,
    minbar,
    moment_decay_fit,
    moments,
    reference_integral,
    rule,
    weight_sums,
)

__all__ = [
    "NumericalFailure",
    "alias_table",
    "convergence_study",
    "integrate",
    "minbar",
    "moment_decay_fit",
    "moments",
    "reference_integral",
    "rule",
    "weight_sums",
]
