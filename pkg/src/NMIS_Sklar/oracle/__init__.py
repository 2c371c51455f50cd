"""Reference implementations for cross-checks; not used by the production paths."""

from .reference import (
    cdf_by_enumeration,
    copula_integral_by_midpoint,
    copula_integral_by_quadrature,
    ipf_by_alternating_scaling,
    tau_by_pair_enumeration,
)

__all__ = [
    "cdf_by_enumeration",
    "tau_by_pair_enumeration",
    "copula_integral_by_quadrature",
    "copula_integral_by_midpoint",
    "ipf_by_alternating_scaling",
]
