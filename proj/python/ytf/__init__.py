from ._ytf import (  # noqa: F401
    ball_moment,
    check_admissible,
    chi_cut,
    divergence_identity_is_zero,
    flat_energy,
    halfspace_moment,
    identity_residuals,
    neumann_kernel,
    solve_v_summary,
    sphere_constant,
    standard_quadratic_json,
    u_eval,
    z_kernel_dimension,
)

__all__ = [
    "ball_moment",
    "check_admissible",
    "chi_cut",
    "divergence_identity_is_zero",
    "flat_energy",
    "halfspace_moment",
    "identity_residuals",
    "neumann_kernel",
    "solve_v_summary",
    "sphere_constant",
    "standard_quadratic_json",
    "u_eval",
    "z_kernel_dimension",
]
