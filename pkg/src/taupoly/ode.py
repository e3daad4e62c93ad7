"""Linear differential operators with polynomial coefficients and the
initial-value problems they define.

The operator is D[y] = sum_i coeffs[i] * y^(i) + inhomogeneous, with
every coefficient an exact ``Poly``.  A problem bundles the operator
with an initial Taylor partial sum T, an approximation interval and a
target degree.  ``taylor_reference`` solves the problem's Taylor
recurrence exactly and serves as the independent reference for the
tau-method solver and the analysis harness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidOperatorError, LinearSystemError, NotWellPosedError
from .linalg import LinearSystem, solve_linear_system
from .polynomial import LinForm, Poly, SymPoly


@dataclass(frozen=True)
class DiffOperator:
    """D[y] = sum_i coeffs[i] * y^(i) + inhomogeneous."""

    coeffs: tuple[Poly, ...]
    inhomogeneous: Poly = Poly.zero()

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("operator needs at least one coefficient polynomial")

    def order(self) -> int:
        """Highest derivative order with a nonzero coefficient polynomial."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[i].is_zero():
                return i
        raise InvalidOperatorError("every coefficient polynomial is zero")

    def leading_coefficient(self) -> Poly:
        return self.coeffs[self.order()]

    def apply(self, y):
        """Apply the operator; Poly in -> Poly out, SymPoly in -> SymPoly out."""
        total = SymPoly.zero() if isinstance(y, SymPoly) else Poly.zero()
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                total = total + a * y.derivative(i)
        return total + self.inhomogeneous

    def singularity_report(self) -> "RegularSingularityReport":
        value = self.leading_coefficient()(0)
        return RegularSingularityReport(a_at_zero=value, is_singular=value == 0)


@dataclass(frozen=True)
class RegularSingularityReport:
    """Whether the leading coefficient vanishes at the origin."""

    a_at_zero: Fraction
    is_singular: bool


@dataclass(frozen=True)
class IvpProblem:
    """Operator + initial Taylor partial sum + interval + target degree.

    The initialization point is always x = 0 and must lie inside the
    approximation interval.
    """

    operator: DiffOperator
    initial: Poly
    interval: tuple[Fraction, Fraction]
    degree: int

    def __post_init__(self):
        a, b = self.interval
        if a >= b:
            raise ValueError(f"invalid interval: need a < b, got [{a}, {b}]")
        if not (a <= 0 <= b):
            raise ValueError("the initialization point 0 must lie in the interval")
        if self.degree < 0:
            raise ValueError("target degree must be non-negative")

    def integration_order(self) -> int:
        """Number of repeated integrations bridging y and the unknown tail.

        max(deg(T) + 1, k); a zero initial sum contributes nothing, so
        the operator order alone decides.
        """
        k = self.operator.order()
        if self.initial.is_zero():
            return k
        return max(self.initial.degree() + 1, k)


def taylor_coefficient_equations(p: SymPoly, upto: int) -> tuple[LinForm, ...]:
    """Coefficient forms of x^0 .. x^upto, each read as ``form = 0``.

    Identically-zero forms are kept so the result always has upto+1
    entries aligned with the power index.
    """
    if upto < 0:
        raise ValueError("upto must be non-negative")
    return tuple(p.coeff(i) for i in range(upto + 1))


def taylor_reference(problem: IvpProblem, N: int) -> Poly:
    """Degree-N Taylor polynomial of the problem's exact solution at 0.

    Writes the solution as T + V^s[u] with u a polynomial of unknown
    coefficients c0..c_{N-s}, applies the operator symbolically, and
    solves the first N-s+1 non-trivial Taylor-coefficient equations as
    one square exact system.

    Truncating u at degree N-s corrupts high-index coefficient
    equations (they lose contributions from the discarded tail), so
    equations are only collected up to the largest index that is
    guaranteed identical to the untruncated recurrence.  For well-posed
    problems that window always contains enough equations; running out
    raises ``NotWellPosedError``.
    """
    T = problem.initial
    if not T.is_zero() and N < T.degree():
        raise ValueError(f"N={N} is below the initial sum's degree {T.degree()}")
    op = problem.operator
    s = problem.integration_order()
    unknown_count = N - s + 1
    if unknown_count <= 0:
        # The first s Taylor coefficients of the solution are T's.
        return T

    u = SymPoly(tuple(LinForm.unknown(j) for j in range(unknown_count)))
    image = op.apply(SymPoly.from_poly(T) + u.integrate(s))

    # Largest equation index untouched by the truncation of u: a term
    # x^a * d^i/dx^i of the operator sends c_j * x^(j+s) to degree
    # j + s - i + a, so index t can involve c_j up to t - s + shift.
    shift = max(
        i - a.order_at_zero()
        for i, a in enumerate(op.coeffs)
        if not a.is_zero()
    )
    safe_limit = N - shift
    top = image.degree()
    if top is not None:
        safe_limit = min(safe_limit, top)

    equations: list[LinForm] = []
    for t in range(safe_limit + 1):
        form = image.coeff(t)
        if not form.is_zero():
            equations.append(form)
            if len(equations) == unknown_count:
                break
    if len(equations) < unknown_count:
        raise NotWellPosedError(
            f"only {len(equations)} usable Taylor equations for "
            f"{unknown_count} unknowns; the coefficient recurrence does not "
            "determine the solution"
        )

    try:
        assignment = solve_linear_system(LinearSystem(tuple(equations)))
    except LinearSystemError as exc:
        raise NotWellPosedError(
            f"Taylor coefficient system has no unique solution: {exc}"
        ) from exc
    return T + u.substitute(assignment.values).integrate(s)
