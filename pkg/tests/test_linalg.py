import random
from fractions import Fraction as F

import pytest

from taupoly import Assignment, LinForm, LinearSystem, Poly, SymPoly, solve_linear_system
from taupoly.errors import (
    InconsistentSystemError,
    NoUniqueSolutionError,
    SystemShapeError,
)

import helpers


def det(matrix):
    """Cofactor-expansion determinant (independent of the solver)."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = F(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * det(minor)
        total += term if j % 2 == 0 else -term
    return total


def cramer(matrix, rhs):
    d = det(matrix)
    assert d != 0
    out = []
    for j in range(len(matrix)):
        replaced = [row[:j] + [rhs[i]] + row[j + 1:] for i, row in enumerate(matrix)]
        out.append(det(replaced) / d)
    return out


def system_from_matrix(matrix, rhs) -> LinearSystem:
    equations = tuple(
        LinForm(-rhs[i], {j: matrix[i][j] for j in range(len(matrix))})
        for i in range(len(matrix))
    )
    return LinearSystem(equations)


def test_trace_equations_reproduce_printed_solution():
    assignment = solve_linear_system(LinearSystem(helpers.trace_equations()))
    assert dict(assignment.values) == helpers.trace_solution_values()


def test_identity_system():
    eqs = tuple(LinForm(-F(i + 1, 3), {i: 1}) for i in range(4))
    assignment = solve_linear_system(LinearSystem(eqs))
    assert all(assignment[i] == F(i + 1, 3) for i in range(4))


def test_matches_cramer_oracle_on_random_systems():
    rng = random.Random(37)
    solved = 0
    while solved < 100:
        matrix = [[helpers.rand_fraction(rng, 5, 4) for _ in range(4)] for _ in range(4)]
        rhs = [helpers.rand_fraction(rng, 5, 4) for _ in range(4)]
        if det(matrix) == 0:
            continue
        assignment = solve_linear_system(system_from_matrix(matrix, rhs))
        expected = cramer(matrix, rhs)
        assert [assignment[j] for j in range(4)] == expected
        solved += 1


def test_singular_system_raises():
    eqs = (
        LinForm(0, {0: 1, 1: 1}),
        LinForm(0, {0: 2, 1: 2}),
    )
    with pytest.raises(NoUniqueSolutionError):
        solve_linear_system(LinearSystem(eqs))


def test_inconsistent_system_raises():
    eqs = (
        LinForm(1, {0: 1, 1: 1}),
        LinForm(2, {0: 1, 1: 1}),
    )
    with pytest.raises(InconsistentSystemError):
        solve_linear_system(LinearSystem(eqs))
    with pytest.raises(InconsistentSystemError):
        solve_linear_system(LinearSystem((LinForm(3),)))


def test_shape_error_reports_counts():
    eqs = (
        LinForm(1, {0: 1}),
        LinForm(2, {0: 1, 1: 1}),
        LinForm(0, {1: 2}),
    )
    with pytest.raises(SystemShapeError) as info:
        solve_linear_system(LinearSystem(eqs))
    assert info.value.equations == 3
    assert info.value.unknowns == 2


def test_trivial_rows_are_dropped_before_shape_check():
    eqs = (
        LinForm(),  # 0 = 0
        LinForm(-1, {0: 1}),
        LinForm(),
    )
    assignment = solve_linear_system(LinearSystem(eqs))
    assert assignment[0] == 1
    assert LinearSystem(eqs).nontrivial() == (LinForm(-1, {0: 1}),)


def test_solution_zeroes_every_equation_exactly():
    rng = random.Random(41)
    for _ in range(20):
        n = rng.randint(1, 5)
        matrix = [[helpers.rand_fraction(rng, 4, 3) for _ in range(n)] for _ in range(n)]
        rhs = [helpers.rand_fraction(rng, 4, 3) for _ in range(n)]
        if det(matrix) == 0:
            continue
        system = system_from_matrix(matrix, rhs)
        assignment = solve_linear_system(system)
        # reassemble sum(eq_i * x^i) and substitute: must be the zero polynomial
        assembled = SymPoly(system.equations)
        assert assembled.substitute(assignment.values) == Poly.zero()


def test_row_permutation_invariance():
    rng = random.Random(43)
    base = list(helpers.trace_equations())
    reference = solve_linear_system(LinearSystem(tuple(base)))
    for _ in range(10):
        shuffled = base[:]
        rng.shuffle(shuffled)
        assert solve_linear_system(LinearSystem(tuple(shuffled))).values == reference.values


def test_equation_scaling_invariance():
    rng = random.Random(47)
    base = list(helpers.trace_equations())
    reference = solve_linear_system(LinearSystem(tuple(base)))
    for index in range(len(base)):
        scaled = base[:]
        factor = helpers.rand_fraction(rng, 7, 5)
        if factor == 0:
            factor = F(3, 2)
        scaled[index] = scaled[index] * factor
        assert solve_linear_system(LinearSystem(tuple(scaled))).values == reference.values


def test_empty_system():
    assignment = solve_linear_system(LinearSystem(()))
    assert len(assignment) == 0


def test_assignment_container_protocol():
    assignment = Assignment({2: F(1, 2), 0: F(3)})
    assert 2 in assignment and 1 not in assignment
    assert list(assignment) == [0, 2]
    assert len(assignment) == 2
