"""Floating-point cross-checks: grid residuals, convergence studies, the
reduced ODE, an implicit dissipative stepper and adaptive quadrature."""

from .fd import (
    ConvergenceStudy,
    Grid,
    ResidualReport,
    convergence_order,
    fd_biharmonic,
    fd_operator_error,
    fd_residual,
    refinement,
    stencil_derivatives,
)
from .io import read_field_csv, write_field_csv, write_json
from .ode import ODEIntegrationError, ODESolution, initial_values, integrate_reduced_ode
from .quadrature import QuadratureError, adaptive_quadrature, simpson
from .timestep import LinearSolveError, StepHistory, laplacian_matrix, time_step_dissipative

__all__ = [
    "Grid", "ResidualReport", "ConvergenceStudy", "fd_residual", "fd_biharmonic", "fd_operator_error",
    "convergence_order", "refinement", "stencil_derivatives", "write_field_csv", "read_field_csv",
    "write_json", "ODEIntegrationError", "ODESolution", "initial_values", "integrate_reduced_ode",
    "QuadratureError", "adaptive_quadrature", "simpson", "LinearSolveError", "StepHistory",
    "laplacian_matrix", "time_step_dissipative",
]
