"""Exact univariate polynomial algebra over rational scalars.

Three value types build on each other:

* ``Poly`` -- dense polynomial in x with ``fractions.Fraction``
  coefficients, lowest power first.
* ``LinForm`` -- affine form ``constant + sum(coeff * c_i)`` over
  integer-indexed unknowns c0, c1, ...
* ``SymPoly`` -- polynomial in x whose coefficients are ``LinForm``s,
  i.e. a polynomial that is linear in every unknown by construction.

All values are immutable and kept canonical: no stored leading zero
coefficient, no zero term inside a form.  Every operation is exact;
nothing in this module touches floating point.

The scalar type is plain ``fractions.Fraction`` (re-exported as
``Rational``): it already guarantees a positive denominator, a reduced
numerator/denominator pair and arbitrary precision.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    IncompleteAssignmentError,
    NonDivisibleError,
    NonlinearityError,
    UndefinedOrderError,
)

Rational = Fraction
RationalLike = Union[Fraction, int]


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational scalar, got {type(value).__name__}")


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly:
    """Dense polynomial over exact rationals, lowest power first."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: RationalLike) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, power: int, coeff: RationalLike = 1) -> "Poly":
        if power < 0:
            raise ValueError("power must be non-negative")
        return cls([0] * power + [coeff])

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def coeff(self, power: int) -> Fraction:
        """Coefficient of x**power (zero beyond the stored degree)."""
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return _ZERO

    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial (below every integer)."""
        return len(self._coeffs) - 1 if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def order_at_zero(self) -> int:
        """Index of the lowest nonzero coefficient (the zero's multiplicity at x=0)."""
        for j, c in enumerate(self._coeffs):
            if c != 0:
                return j
        raise UndefinedOrderError("order at zero is undefined for the zero polynomial")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Poly):
            a, b = self._coeffs, other._coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for j, c in enumerate(b):
                out[j] += c
            return Poly(out)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Poly):
            return self + (-other)
        return NotImplemented

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self._coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly()
            out = [_ZERO] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
            return Poly(out)
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor: RationalLike) -> "Poly":
        f = _frac(factor)
        if f == 0:
            return Poly()
        return Poly(tuple(c * f for c in self._coeffs))

    # -- calculus ----------------------------------------------------------

    def derivative(self, order: int = 1) -> "Poly":
        """Exact order-th derivative."""
        _check_order(order)
        cs = self._coeffs
        for _ in range(order):
            cs = tuple(cs[j] * j for j in range(1, len(cs)))
        return Poly(cs)

    def integrate(self, times: int = 1) -> "Poly":
        """Repeated antiderivative, each stage chosen to vanish at x = 0."""
        _check_order(times)
        cs = self._coeffs
        for _ in range(times):
            cs = (_ZERO,) + tuple(c / (j + 1) for j, c in enumerate(cs))
        return Poly(cs)

    def compose_affine(self, alpha: RationalLike, beta: RationalLike) -> "Poly":
        """Substitute x <- alpha*x + beta and expand."""
        return Poly(_compose_affine(self._coeffs, _frac(alpha), _frac(beta), _ZERO))

    def div_x_pow(self, power: int) -> "Poly":
        """Exact division by x**power (the zero polynomial divides cleanly)."""
        _check_order(power)
        if power == 0 or self.is_zero():
            return self
        if self.order_at_zero() < power:
            raise NonDivisibleError(
                f"polynomial has a nonzero coefficient below x^{power}"
            )
        return Poly(self._coeffs[power:])

    def __call__(self, point: RationalLike) -> Fraction:
        """Exact evaluation by Horner's rule."""
        x = _frac(point)
        acc = _ZERO
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    # -- comparisons / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self._coeffs)!r})"

    def __str__(self) -> str:
        from .parser import render_poly

        return render_poly(self)


class LinForm:
    """Affine form ``constant + sum(terms[i] * c_i)`` over unknowns c_i.

    Terms with coefficient zero are never stored; the identically-zero
    form has an empty term map and constant 0.
    """

    __slots__ = ("_constant", "_terms")

    def __init__(
        self,
        constant: RationalLike = 0,
        terms: Mapping[int, RationalLike] | Iterable[tuple[int, RationalLike]] = (),
    ):
        acc: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for index, coeff in items:
            if not isinstance(index, int) or index < 0:
                raise ValueError(f"unknown index must be a non-negative int, got {index!r}")
            acc[index] = acc.get(index, _ZERO) + _frac(coeff)
        self._constant = _frac(constant)
        self._terms: dict[int, Fraction] = {
            i: c for i, c in sorted(acc.items()) if c != 0
        }

    @classmethod
    def unknown(cls, index: int, coeff: RationalLike = 1) -> "LinForm":
        return cls(0, ((index, coeff),))

    @property
    def constant(self) -> Fraction:
        return self._constant

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._terms)

    def coeff_of(self, index: int) -> Fraction:
        return self._terms.get(index, _ZERO)

    def unknowns(self) -> tuple[int, ...]:
        return tuple(self._terms)

    def is_zero(self) -> bool:
        return self._constant == 0 and not self._terms

    def is_constant(self) -> bool:
        return not self._terms

    def __add__(self, other):
        if isinstance(other, LinForm):
            terms = dict(self._terms)
            for i, c in other._terms.items():
                terms[i] = terms.get(i, _ZERO) + c
            return LinForm(self._constant + other._constant, terms)
        if isinstance(other, (Fraction, int)):
            return LinForm(self._constant + _frac(other), self._terms)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (LinForm, Fraction, int)):
            return self + (-other if isinstance(other, LinForm) else -_frac(other))
        return NotImplemented

    def __neg__(self) -> "LinForm":
        return LinForm(-self._constant, {i: -c for i, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            f = _frac(other)
            if f == 0:
                return LinForm()
            return LinForm(
                self._constant * f, {i: c * f for i, c in self._terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def substitute(self, assignment: Mapping[int, RationalLike]) -> Fraction:
        """Collapse to a rational; every occurring unknown must be assigned."""
        acc = self._constant
        for i, c in self._terms.items():
            if i not in assignment:
                raise IncompleteAssignmentError(f"no value assigned to unknown c{i}")
            acc += c * _frac(assignment[i])
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinForm)
            and self._constant == other._constant
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self._constant, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"LinForm({self._constant!r}, {self._terms!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in self._terms.items():
            parts.append(_signed(c, f"c{i}", first=not parts))
        if self._constant != 0 or not parts:
            parts.append(_signed(self._constant, "", first=not parts))
        return "".join(parts)


def _signed(coeff: Fraction, symbol: str, first: bool) -> str:
    if first:
        lead = "-" if coeff < 0 else ""
    else:
        lead = " - " if coeff < 0 else " + "
    mag = abs(coeff)
    if not symbol:
        return f"{lead}{mag}"
    if mag == 1:
        return f"{lead}{symbol}"
    return f"{lead}{mag}*{symbol}"


class SymPoly:
    """Polynomial in x whose coefficients are affine forms in unknowns."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[LinForm | RationalLike] = ()):
        cs = [c if isinstance(c, LinForm) else LinForm(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs: tuple[LinForm, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "SymPoly":
        return cls()

    @classmethod
    def from_poly(cls, p: Poly) -> "SymPoly":
        return cls(tuple(LinForm(c) for c in p.coeffs))

    def as_poly(self) -> Poly:
        """Extract the embedded Poly; fails if any unknown occurs."""
        if self.has_unknowns():
            raise ValueError("polynomial still carries unknowns")
        return Poly(tuple(c.constant for c in self._coeffs))

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[LinForm, ...]:
        return self._coeffs

    def coeff(self, power: int) -> LinForm:
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return LinForm()

    def degree(self) -> int | None:
        return len(self._coeffs) - 1 if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def has_unknowns(self) -> bool:
        return any(c.terms for c in self._coeffs)

    def unknowns(self) -> tuple[int, ...]:
        seen: set[int] = set()
        for c in self._coeffs:
            seen.update(c.unknowns())
        return tuple(sorted(seen))

    def order_at_zero(self) -> int:
        for j, c in enumerate(self._coeffs):
            if not c.is_zero():
                return j
        raise UndefinedOrderError("order at zero is undefined for the zero polynomial")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Poly):
            other = SymPoly.from_poly(other)
        if isinstance(other, SymPoly):
            a, b = self._coeffs, other._coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for j, c in enumerate(b):
                out[j] = out[j] + c
            return SymPoly(out)
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, Poly):
            return self + other
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, (Poly, SymPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Poly):
            return (-self) + other
        return NotImplemented

    def __neg__(self) -> "SymPoly":
        return SymPoly(tuple(-c for c in self._coeffs))

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        if isinstance(other, SymPoly):
            if self.has_unknowns() and other.has_unknowns():
                raise NonlinearityError(
                    "product of two polynomials that both carry unknowns"
                )
            if other.has_unknowns():
                return other * self.as_poly()
            other = other.as_poly()
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return SymPoly()
            out = [LinForm()] * (len(self._coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    if b != 0:
                        out[i + j] = out[i + j] + a * b
            return SymPoly(out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Poly, Fraction, int)):
            return self * other
        return NotImplemented

    def scale(self, factor: RationalLike) -> "SymPoly":
        f = _frac(factor)
        if f == 0:
            return SymPoly()
        return SymPoly(tuple(c * f for c in self._coeffs))

    # -- calculus ----------------------------------------------------------

    def derivative(self, order: int = 1) -> "SymPoly":
        _check_order(order)
        cs = self._coeffs
        for _ in range(order):
            cs = tuple(cs[j] * j for j in range(1, len(cs)))
        return SymPoly(cs)

    def integrate(self, times: int = 1) -> "SymPoly":
        """Repeated antiderivative, each stage chosen to vanish at x = 0."""
        _check_order(times)
        cs = self._coeffs
        for _ in range(times):
            cs = (LinForm(),) + tuple(
                c * Fraction(1, j + 1) for j, c in enumerate(cs)
            )
        return SymPoly(cs)

    def compose_affine(self, alpha: RationalLike, beta: RationalLike) -> "SymPoly":
        """Substitute x <- alpha*x + beta and expand."""
        return SymPoly(
            _compose_affine(self._coeffs, _frac(alpha), _frac(beta), LinForm())
        )

    def div_x_pow(self, power: int) -> "SymPoly":
        _check_order(power)
        if power == 0 or self.is_zero():
            return self
        if self.order_at_zero() < power:
            raise NonDivisibleError(
                f"polynomial has a nonzero coefficient below x^{power}"
            )
        return SymPoly(self._coeffs[power:])

    def substitute(self, assignment: Mapping[int, RationalLike]) -> Poly:
        """Collapse every coefficient form to a rational."""
        return Poly(tuple(c.substitute(assignment) for c in self._coeffs))

    # -- comparisons / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"SymPoly({list(self._coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self._coeffs):
            if c.is_zero():
                continue
            body = str(c)
            if " " in body or "*" in body:
                body = f"({body})"
            if j == 0:
                parts.append(body)
            elif j == 1:
                parts.append(f"{body}*x" if body != "1" else "x")
            else:
                parts.append(f"{body}*x^{j}" if body != "1" else f"x^{j}")
        return " + ".join(parts)


def _check_order(value: int) -> None:
    if not isinstance(value, int) or value < 0:
        raise ValueError(f"expected a non-negative integer, got {value!r}")


def _compose_affine(coeffs, alpha, beta, zero):
    # Horner in the polynomial ring: acc <- acc*(alpha*x + beta) + c_j,
    # scanning coefficients from the highest power down.
    acc: list = []
    for c in reversed(coeffs):
        nxt = [zero] * (len(acc) + 1)
        for j, a in enumerate(acc):
            nxt[j] = nxt[j] + a * beta
            nxt[j + 1] = nxt[j + 1] + a * alpha
        nxt[0] = nxt[0] + c
        acc = nxt
    return acc
