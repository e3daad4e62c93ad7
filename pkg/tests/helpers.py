"""Shared fixture data and small oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction as F

from taupoly import DiffOperator, IvpProblem, LinForm, Poly, SymPoly


def showcase_operator() -> DiffOperator:
    """x*y'' - y' + 4x^3*y : regular singular point at 0."""
    return DiffOperator(coeffs=(Poly((0, 0, 0, 4)), Poly((-1,)), Poly((0, 1))))


def showcase_problem(n: int = 4) -> IvpProblem:
    return IvpProblem(
        operator=showcase_operator(),
        initial=Poly((0, 0, 1)),
        interval=(F(-1), F(1)),
        degree=n,
    )


def bessel_problem(n: int = 8) -> IvpProblem:
    """x*y'' + y' + x*y = 0 through T = 1: the J0 Bessel function."""
    op = DiffOperator(coeffs=(Poly((0, 1)), Poly((1,)), Poly((0, 1))))
    return IvpProblem(operator=op, initial=Poly((1,)), interval=(F(-1), F(1)), degree=n)


def exact_poly_problem(n: int = 4) -> IvpProblem:
    """x*y'' - y' = 0 through T = x^2: the solution is exactly x^2."""
    op = DiffOperator(coeffs=(Poly.zero(), Poly((-1,)), Poly((0, 1))))
    return IvpProblem(operator=op, initial=Poly((0, 0, 1)), interval=(F(-1), F(1)), degree=n)


def sine_of_square_series(degree: int) -> Poly:
    """Maclaurin polynomial of sin(x^2), built from the sine series.

    Independent of the solver: substitutes x^2 into sum (-1)^j t^(2j+1)/(2j+1)!.
    """
    coeffs = [F(0)] * (degree + 1)
    j = 0
    fact = 1  # (2j+1)!
    while 4 * j + 2 <= degree:
        coeffs[4 * j + 2] = F((-1) ** j, fact)
        j += 1
        fact *= (2 * j) * (2 * j + 1)
    return Poly(coeffs)


def sin_squared_series(degree: int) -> Poly:
    """Maclaurin polynomial of sin(x)^2 via the double-angle identity."""
    coeffs = [F(0)] * (degree + 1)
    j = 1
    fact = 2  # (2j)!
    while 2 * j <= degree:
        coeffs[2 * j] = F((-1) ** (j + 1) * 2 ** (2 * j - 1), fact)
        j += 1
        fact *= (2 * j - 1) * (2 * j)
    return Poly(coeffs)


def bessel_j0_series(degree: int) -> Poly:
    """J0 Maclaurin polynomial from the recurrence a_{j+2} = -a_j/(j+2)^2."""
    coeffs = [F(0)] * (degree + 1)
    value = F(1)
    j = 0
    while j <= degree:
        coeffs[j] = value
        value = -value / (j + 2) ** 2
        j += 2
    return Poly(coeffs)


def rand_fraction(rng: random.Random, span: int = 9, den: int = 9) -> F:
    return F(rng.randint(-span, span), rng.randint(1, den))


def rand_poly(rng: random.Random, max_degree: int = 7, span: int = 9) -> Poly:
    degree = rng.randint(0, max_degree)
    return Poly([rand_fraction(rng, span) for _ in range(degree + 1)])


def rand_linform(rng: random.Random, max_unknown: int = 5) -> LinForm:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        terms[rng.randint(0, max_unknown)] = rand_fraction(rng)
    return LinForm(rand_fraction(rng), terms)


def rand_sympoly(rng: random.Random, max_degree: int = 5) -> SymPoly:
    degree = rng.randint(0, max_degree)
    return SymPoly([rand_linform(rng) for _ in range(degree + 1)])


def horner_float(p: Poly, x: float) -> float:
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + float(c)
    return acc


# --- frozen expected values from the showcase n=4 run ----------------------
# Symbolic intermediates, written with c0, c1 the core unknowns and
# c2..c5 the discrepancy coefficients.

def trace_u_p_symbolic() -> SymPoly:
    return SymPoly((LinForm.unknown(0), LinForm.unknown(1)))


def trace_y_symbolic() -> SymPoly:
    # x^2 + (1/6)c0*x^3 + (1/24)c1*x^4
    return SymPoly((
        LinForm(),
        LinForm(),
        LinForm(1),
        LinForm.unknown(0, F(1, 6)),
        LinForm.unknown(1, F(1, 24)),
    ))


def trace_image_symbolic() -> SymPoly:
    # (1/2)c0*x^2 + (1/3)c1*x^3 + 4x^5 + (2/3)c0*x^6 + (1/6)c1*x^7
    return SymPoly((
        LinForm(),
        LinForm(),
        LinForm.unknown(0, F(1, 2)),
        LinForm.unknown(1, F(1, 3)),
        LinForm(),
        LinForm(4),
        LinForm.unknown(0, F(2, 3)),
        LinForm.unknown(1, F(1, 6)),
    ))


def trace_regularized_symbolic() -> SymPoly:
    # (1/2)c0 + (1/3)c1*x + 4x^3 + (2/3)c0*x^4 + (1/6)c1*x^5
    return SymPoly((
        LinForm.unknown(0, F(1, 2)),
        LinForm.unknown(1, F(1, 3)),
        LinForm(),
        LinForm(4),
        LinForm.unknown(0, F(2, 3)),
        LinForm.unknown(1, F(1, 6)),
    ))


def trace_equations() -> tuple[LinForm, ...]:
    return (
        LinForm(0, {4: F(1), 2: F(-1), 0: F(1, 2)}),
        LinForm(0, {5: F(5), 3: F(-3), 1: F(1, 3)}),
        LinForm(0, {4: F(-8), 2: F(2)}),
        LinForm(4, {5: F(-20), 3: F(4)}),
        LinForm(0, {4: F(8), 0: F(2, 3)}),
        LinForm(0, {5: F(16), 1: F(1, 6)}),
    )


def trace_solution_values() -> dict[int, F]:
    return {0: F(0), 1: F(-48, 7), 2: F(0), 3: F(-9, 14), 4: F(0), 5: F(1, 14)}
