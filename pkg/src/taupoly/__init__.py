"""Exact-arithmetic tau-method solver for linear ODE initial-value
problems with polynomial coefficients and a regular singular point at
the origin, plus an analysis harness that measures how close the
produced polynomials come to best approximation.
"""

from .analysis import (
    FunctionSamples,
    PrecisionConfig,
    RatioFailure,
    RatioRow,
    best_approx_error,
    convergence_table,
    optimality_ratio,
    reference_derivative_samples,
    sample_function,
    sample_poly,
    sup_norm_error,
    weighted_l2_norm,
)
from .chebyshev import AffineMap, Basis, build_discrepancy, chebyshev_T, interval_map
from .linalg import Assignment, LinearSystem, solve_linear_system
from .ode import (
    DiffOperator,
    IvpProblem,
    RegularSingularityReport,
    taylor_coefficient_equations,
    taylor_reference,
)
from .parser import (
    ParseDiagnostic,
    ProblemSource,
    parse_polynomial,
    parse_problem,
    parse_source,
    render_poly,
)
from .polynomial import LinForm, Poly, Rational, SymPoly
from .solver import MethodParams, TauSolution, residual_check, solve_at_degree, tau_solve

__all__ = [
    "AffineMap",
    "Assignment",
    "Basis",
    "DiffOperator",
    "FunctionSamples",
    "IvpProblem",
    "LinForm",
    "LinearSystem",
    "MethodParams",
    "ParseDiagnostic",
    "Poly",
    "PrecisionConfig",
    "ProblemSource",
    "Rational",
    "RatioFailure",
    "RatioRow",
    "RegularSingularityReport",
    "SymPoly",
    "TauSolution",
    "best_approx_error",
    "build_discrepancy",
    "chebyshev_T",
    "convergence_table",
    "interval_map",
    "optimality_ratio",
    "parse_polynomial",
    "parse_problem",
    "parse_source",
    "reference_derivative_samples",
    "render_poly",
    "residual_check",
    "sample_function",
    "sample_poly",
    "solve_at_degree",
    "solve_linear_system",
    "sup_norm_error",
    "tau_solve",
    "taylor_coefficient_equations",
    "taylor_reference",
    "weighted_l2_norm",
]

__version__ = "0.1.0"
