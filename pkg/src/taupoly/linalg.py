"""Exact solution of square linear systems assembled from affine forms.

Each equation is a ``LinForm`` understood as ``form = 0``.  Identically
zero forms (0 = 0) are tolerated in the input and dropped before the
squareness check.  Solving uses fraction-free (Bareiss) elimination on
an integer matrix obtained by clearing denominators row by row, which
keeps intermediate entries as single big integers instead of fractions
with independently growing numerators and denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import (
    InconsistentSystemError,
    NoUniqueSolutionError,
    SystemShapeError,
)
from .polynomial import LinForm


@dataclass(frozen=True)
class LinearSystem:
    """A bundle of equations ``form = 0`` over integer-indexed unknowns."""

    equations: tuple[LinForm, ...]

    def nontrivial(self) -> tuple[LinForm, ...]:
        return tuple(e for e in self.equations if not e.is_zero())

    def unknowns(self) -> tuple[int, ...]:
        seen: set[int] = set()
        for e in self.equations:
            seen.update(e.unknowns())
        return tuple(sorted(seen))


@dataclass(frozen=True)
class Assignment:
    """Solved values, one exact rational per unknown index."""

    values: Mapping[int, Fraction]

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def __contains__(self, index: int) -> bool:
        return index in self.values

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.values))

    def __len__(self) -> int:
        return len(self.values)


def solve_linear_system(system: LinearSystem) -> Assignment:
    """Solve a square exact system; the result zeroes every equation.

    Raises ``InconsistentSystemError`` when equations contradict each
    other, ``NoUniqueSolutionError`` when the matrix is singular, and
    ``SystemShapeError`` when the non-trivial equation count differs
    from the unknown count.
    """
    equations = system.nontrivial()
    for e in equations:
        if e.is_constant():
            raise InconsistentSystemError(f"equation reduces to {e.constant} = 0")
    unknowns = system.unknowns()
    if len(equations) != len(unknowns):
        raise SystemShapeError(len(equations), len(unknowns))
    n = len(unknowns)
    if n == 0:
        return Assignment({})

    # Integer augmented matrix: row i is equation i scaled by the lcm of
    # its denominators; the last column holds the negated constant.
    rows: list[list[int]] = []
    for e in equations:
        entries = [e.coeff_of(u) for u in unknowns] + [-e.constant]
        scale = math.lcm(*(c.denominator for c in entries))
        rows.append([int(c * scale) for c in entries])

    # Fraction-free elimination.  Pivot: first row at or below the
    # diagonal with a nonzero entry in the current column.
    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot is None:
            for i in range(k, n):
                if all(rows[i][j] == 0 for j in range(n)) and rows[i][n] != 0:
                    raise InconsistentSystemError(
                        "equations are contradictory (0 = nonzero after elimination)"
                    )
            raise NoUniqueSolutionError("system matrix is singular")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                rows[i][j] = (rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]

    # Back substitution over exact rationals.
    solution: list[Fraction] = [Fraction(0)] * n
    for i in reversed(range(n)):
        acc = Fraction(rows[i][n])
        for j in range(i + 1, n):
            acc -= rows[i][j] * solution[j]
        solution[i] = acc / rows[i][i]

    return Assignment({u: solution[j] for j, u in enumerate(unknowns)})
