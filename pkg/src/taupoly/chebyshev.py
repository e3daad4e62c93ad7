"""Chebyshev polynomials of the first kind, the symbolic discrepancy,
and the affine map that carries an interval [a, b] onto [-1, 1].

Everything here is exact integer/rational arithmetic; the numeric
analysis layer has its own floating evaluation path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DiscrepancyRangeError, InvalidIntervalError
from .polynomial import LinForm, Poly, RationalLike, SymPoly, _frac


class Basis(enum.Enum):
    """Graded polynomial bases usable for the discrepancy.

    Every member must satisfy deg(element(i)) == i exactly; the solver
    and its tests rely only on that property.
    """

    CHEBYSHEV_FIRST_KIND = "chebyshev-first-kind"


# T_0, T_1, ... built incrementally; values are immutable so sharing is safe.
_CHEB_CACHE: list[Poly] = [Poly.one(), Poly.x()]


def chebyshev_T(i: int) -> Poly:
    """T_i with exact integer coefficients, via the three-term recurrence."""
    if not isinstance(i, int) or i < 0:
        raise ValueError(f"Chebyshev index must be a non-negative int, got {i!r}")
    two_x = Poly((0, 2))
    while len(_CHEB_CACHE) <= i:
        _CHEB_CACHE.append(two_x * _CHEB_CACHE[-1] - _CHEB_CACHE[-2])
    return _CHEB_CACHE[i]


def basis_element(basis: Basis, i: int) -> Poly:
    if basis is Basis.CHEBYSHEV_FIRST_KIND:
        return chebyshev_T(i)
    raise ValueError(f"unsupported basis {basis!r}")


@dataclass(frozen=True)
class AffineMap:
    """The map z(x) = alpha*x + beta."""

    alpha: Fraction
    beta: Fraction

    def __call__(self, x: RationalLike) -> Fraction:
        return self.alpha * _frac(x) + self.beta


def interval_map(a: RationalLike, b: RationalLike) -> AffineMap:
    """Affine z with z(a) = -1 and z(b) = 1 exactly."""
    a, b = _frac(a), _frac(b)
    if a >= b:
        raise InvalidIntervalError(f"invalid interval: need a < b, got [{a}, {b}]")
    width = b - a
    return AffineMap(alpha=2 / width, beta=-(b + a) / width)


def build_discrepancy(p: int, m: int, basis: Basis = Basis.CHEBYSHEV_FIRST_KIND) -> SymPoly:
    """Sum of c_j * T_j for j = p+1 .. m, with unknown indices p+1 .. m.

    The unknown indices continue the c-numbering used for the main
    polynomial's coefficients c0..cp, so one shared index space feeds a
    single square linear system.  m == p yields the zero polynomial.
    """
    if m < p:
        raise DiscrepancyRangeError(
            f"discrepancy top degree m={m} is below its starting degree p={p}"
        )
    total = SymPoly.zero()
    for j in range(p + 1, m + 1):
        total = total + SymPoly((LinForm.unknown(j),)) * basis_element(basis, j)
    return total
