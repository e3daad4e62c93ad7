"""The tau-method pipeline: perturb the regularized equation with a
Chebyshev discrepancy so an exact polynomial solution of the requested
degree exists, then recover it from one square exact linear system.

Outline for a problem of operator order k, initial sum degree l and
target degree n:

1. s = max(l+1, k) integrations bridge y and u = y^(s); p = n - s.
2. Build u_p = c0 + ... + cp*x^p symbolically and y_n = T + V^s[u_p].
3. Apply the operator, divide out x^r (r = order of the zero at 0).
4. Let m be the regularized image's degree; add the discrepancy
   tau_1*T_{p+1}(z(x)) + ... + tau_{m-p}*T_m(z(x)) with z mapping the
   interval onto [-1, 1]; the taus reuse unknown indices p+1 .. m.
5. Equate Taylor coefficients 0..m to zero and solve the (m+1)-square
   system exactly; assemble y_n = T + V^s[u_p] with numeric u_p.

The defining identity D[y_n]/x^r + E_m(z(x)) == 0 is re-verified on
the numeric result through an independent polynomial-only path.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from .chebyshev import AffineMap, build_discrepancy, chebyshev_T, interval_map
from .errors import (
    DegreeTooSmallError,
    MalformedRegularizationError,
    NoUniqueSolutionError,
)
from .linalg import LinearSystem, solve_linear_system
from .ode import IvpProblem, taylor_coefficient_equations
from .polynomial import LinForm, Poly, SymPoly

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MethodParams:
    """The derived method parameters for one solve."""

    k: int  # operator order
    l: int  # degree of the initial sum (-1 when it is zero)
    s: int  # integration depth max(l+1, k)
    p: int  # degree of the unknown core polynomial, n - s
    r: int  # order of the operator image's zero at the origin
    m: int  # degree of the regularized image = top discrepancy degree


@dataclass(frozen=True)
class TauSolution:
    y_n: Poly
    u_p: Poly
    tau: tuple[Fraction, ...]
    params: MethodParams
    residual_verified: bool
    warnings: tuple[str, ...]


def tau_solve(problem: IvpProblem) -> TauSolution:
    """Compute the degree-n tau-method approximation for the problem."""
    op = problem.operator
    T = problem.initial
    n = problem.degree
    warnings: list[str] = []

    k = op.order()
    l = -1 if T.is_zero() else T.degree()
    s = problem.integration_order()
    p = n - s
    if p < 0:
        raise DegreeTooSmallError(requested=n, minimum=s)

    report = op.singularity_report()
    if not report.is_singular:
        warnings.append(
            f"leading coefficient is {report.a_at_zero} at x=0 (expected a zero "
            "there); the method still runs, but its near-optimality guarantees "
            "target problems that are singular at the origin"
        )
    if n <= l + s:
        warnings.append(
            f"degree n={n} does not exceed l+s={l + s}; the near-optimality "
            "bound assumes n > l+s"
        )

    u_p = SymPoly(tuple(LinForm.unknown(j) for j in range(p + 1)))
    y_sym = SymPoly.from_poly(T) + u_p.integrate(s)
    image = op.apply(y_sym)

    r = image.order_at_zero()  # raises UndefinedOrderError if image == 0
    regularized = image.div_x_pow(r)
    m = regularized.degree()
    if m < p:
        raise MalformedRegularizationError(
            f"regularized image has degree {m} < p={p}: {regularized!r}"
        )

    zmap = interval_map(*problem.interval)
    discrepancy = build_discrepancy(p, m).compose_affine(zmap.alpha, zmap.beta)
    total = regularized + discrepancy

    equations = taylor_coefficient_equations(total, m)
    assignment = solve_linear_system(LinearSystem(equations))
    missing = [j for j in range(m + 1) if j not in assignment]
    if missing:
        raise NoUniqueSolutionError(
            f"unknowns {missing} never occur in the assembled system; "
            "the solution is not unique"
        )

    u_num = u_p.substitute(assignment.values)
    tau = tuple(assignment[j] for j in range(p + 1, m + 1))
    y_n = T + u_num.integrate(s)
    params = MethodParams(k=k, l=l, s=s, p=p, r=r, m=m)
    verified = _residual_vanishes(problem, y_n, tau, params, zmap)
    return TauSolution(
        y_n=y_n,
        u_p=u_num,
        tau=tau,
        params=params,
        residual_verified=verified,
        warnings=tuple(warnings),
    )


def residual_check(problem: IvpProblem, sol: TauSolution) -> bool:
    """Recompute D[y_n]/x^r + E_m(z(x)) numerically; True iff exactly zero.

    Uses only plain polynomials and the solved tau values, so it is
    independent of the symbolic construction inside ``tau_solve``.
    """
    zmap = interval_map(*problem.interval)
    return _residual_vanishes(problem, sol.y_n, sol.tau, sol.params, zmap)


def _residual_vanishes(
    problem: IvpProblem,
    y_n: Poly,
    tau: tuple[Fraction, ...],
    params: MethodParams,
    zmap: AffineMap,
) -> bool:
    image = problem.operator.apply(y_n)
    if not image.is_zero() and image.order_at_zero() < params.r:
        log.warning(
            "operator image of the numeric solution has a nonzero coefficient "
            "below x^%d; the defining identity cannot hold",
            params.r,
        )
        return False
    regularized = image.div_x_pow(params.r)
    discrepancy = Poly.zero()
    for offset, value in enumerate(tau, start=1):
        term = chebyshev_T(params.p + offset).compose_affine(zmap.alpha, zmap.beta)
        discrepancy = discrepancy + term.scale(value)
    return (regularized + discrepancy).is_zero()


def solve_at_degree(problem: IvpProblem, n: int) -> TauSolution:
    """Convenience: solve the same problem at a different target degree."""
    return tau_solve(replace(problem, degree=n))
