"""Grand Lebesgue norms and oscillatory integral operators."""

from ._core import (
    DomainError,
    apply_operator,
    bgls_norm,
    check_kernel,
    fresnel_I,
    fundamental_function,
    lp_norm,
    psi,
    theorem2_ratio,
    w_functional,
    z_functional,
)

__all__ = [
    "DomainError",
    "apply_operator",
    "bgls_norm",
    "check_kernel",
    "fresnel_I",
    "fundamental_function",
    "lp_norm",
    "psi",
    "theorem2_ratio",
    "w_functional",
    "z_functional",
]
