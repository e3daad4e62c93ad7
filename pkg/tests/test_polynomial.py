import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taupoly import LinForm, Poly, SymPoly
from taupoly.errors import (
    IncompleteAssignmentError,
    NonDivisibleError,
    NonlinearityError,
    UndefinedOrderError,
)

import helpers

fractions_st = st.builds(F, st.integers(-9, 9), st.integers(1, 9))
polys_st = st.builds(Poly, st.lists(fractions_st, max_size=8))
nonzero_polys_st = polys_st.filter(lambda p: not p.is_zero())


def linforms_st():
    return st.builds(
        LinForm,
        fractions_st,
        st.dictionaries(st.integers(0, 5), fractions_st, max_size=3),
    )


sympolys_st = st.builds(SymPoly, st.lists(linforms_st(), max_size=6))


# --- canonical form -------------------------------------------------------

def test_zero_polynomial_is_empty():
    assert Poly((0, 0, 0)).coeffs == ()
    assert Poly().is_zero()
    assert Poly().degree() is None


def test_trailing_zeros_trimmed():
    p = Poly((1, 2, 0, 0))
    assert p.coeffs == (F(1), F(2))
    assert p.degree() == 1


@given(polys_st, polys_st)
def test_rational_canonical_form_after_ops(p, q):
    # Fraction guarantees gcd-reduced, positive denominator; re-normalize
    # every produced coefficient and compare.
    for result in (p + q, p - q, p * q, p.scale(F(3, 7))):
        for c in result.coeffs:
            assert c.denominator > 0
            assert math.gcd(abs(c.numerator), c.denominator) == 1
            assert c == F(c.numerator, c.denominator)
        if result.coeffs:
            assert result.coeffs[-1] != 0


def test_linform_drops_zero_terms():
    form = LinForm(2, {0: F(0), 3: F(1, 2)})
    assert form.unknowns() == (3,)
    assert LinForm(0, {1: F(1), 2: F(-1)}) + LinForm(0, {2: F(1)}) == LinForm(0, {1: 1})
    assert LinForm().is_zero()


def test_sympoly_trims_zero_forms():
    sp = SymPoly((LinForm(1), LinForm(), LinForm(0, {0: 0})))
    assert sp.degree() == 0


# --- arithmetic -----------------------------------------------------------

def test_scale_then_shift_matches_trace_term():
    # 4*x^2, then * x^3 -> the 4x^5 term of the operator image
    assert Poly((0, 0, 1)).scale(4) * Poly.monomial(3) == Poly.monomial(5, 4)


@given(polys_st)
def test_additive_identity(p):
    assert p + Poly.zero() == p


def test_sympoly_times_poly_and_distribution_oracle():
    x = Poly.x()
    c0x = SymPoly((LinForm(), LinForm.unknown(0)))
    assert c0x * (x * x) == SymPoly((LinForm(), LinForm(), LinForm(), LinForm.unknown(0)))

    rng = random.Random(7)
    for _ in range(20):
        sp = helpers.rand_sympoly(rng, max_degree=4)
        p = helpers.rand_poly(rng, max_degree=4)
        product = sp * p
        # brute-force distribution, term by term
        expect = SymPoly()
        for i, form in enumerate(sp.coeffs):
            for j, c in enumerate(p.coeffs):
                expect = expect + SymPoly([LinForm()] * (i + j) + [form * c])
        assert product == expect


def test_product_of_two_unknown_carriers_rejected():
    u = SymPoly((LinForm.unknown(0),))
    v = SymPoly((LinForm.unknown(1),))
    with pytest.raises(NonlinearityError):
        u * v
    # unknown-free SymPoly acts as a plain polynomial
    plain = SymPoly.from_poly(Poly((0, 2)))
    assert u * plain == SymPoly((LinForm(), LinForm.unknown(0, 2)))


@given(nonzero_polys_st, nonzero_polys_st)
def test_degree_of_product_adds(p, q):
    assert (p * q).degree() == p.degree() + q.degree()


def test_mixed_poly_sympoly_addition():
    p = Poly((1, 2))
    sp = SymPoly((LinForm.unknown(0),))
    assert p + sp == sp + p == SymPoly((LinForm(1, {0: 1}), LinForm(2)))


# --- derivative -----------------------------------------------------------

def test_second_derivative_matches_trace():
    y = helpers.trace_y_symbolic()
    assert y.derivative(2) == SymPoly((
        LinForm(2), LinForm.unknown(0), LinForm.unknown(1, F(1, 2)),
    ))


def test_derivative_of_constant_is_zero():
    assert Poly((5,)).derivative().is_zero()
    assert SymPoly((LinForm.unknown(2),)).derivative().is_zero()


def test_derivative_order_composes():
    rng = random.Random(3)
    for _ in range(20):
        p = helpers.rand_poly(rng, max_degree=7)
        assert p.derivative(3) == p.derivative().derivative().derivative()


# --- integrate ------------------------------------------------------------

def test_triple_integral_matches_trace():
    u = helpers.trace_u_p_symbolic()
    assert u.integrate(3) == SymPoly((
        LinForm(), LinForm(), LinForm(),
        LinForm.unknown(0, F(1, 6)), LinForm.unknown(1, F(1, 24)),
    ))


@given(polys_st)
def test_integrate_zero_times_is_identity(p):
    assert p.integrate(0) == p


def test_fundamental_theorem_round_trip():
    rng = random.Random(11)
    for _ in range(50):
        p = helpers.rand_poly(rng)
        assert p.integrate().derivative() == p


@given(polys_st, st.integers(0, 5))
def test_derivative_inverts_repeated_integration(p, s):
    assert p.integrate(s).derivative(s) == p


@given(nonzero_polys_st, st.integers(0, 5))
def test_integration_raises_order_at_zero(p, s):
    assert p.integrate(s).order_at_zero() >= s + p.order_at_zero()


def test_integral_vanishes_at_zero():
    rng = random.Random(13)
    for _ in range(20):
        p = helpers.rand_poly(rng)
        assert p.integrate()(0) == 0


# --- affine composition -----------------------------------------------------

@given(polys_st)
def test_compose_with_identity_map(p):
    assert p.compose_affine(1, 0) == p


def test_compose_T2_with_shifted_map():
    t2 = Poly((-1, 0, 2))
    composed = t2.compose_affine(2, -1)
    assert composed == Poly((1, -8, 8))
    for point in (F(0), F(1, 2), F(1), F(3, 7)):
        assert composed(point) == t2(2 * point - 1)


@given(polys_st, fractions_st.filter(lambda a: a != 0), fractions_st)
def test_compose_affine_invertible(p, alpha, beta):
    there = p.compose_affine(alpha, beta)
    back = there.compose_affine(1 / alpha, -beta / alpha)
    assert back == p
    if not p.is_zero():
        assert there.degree() == p.degree()


def test_compose_affine_on_sympoly():
    sp = SymPoly((LinForm(), LinForm.unknown(0)))  # c0 * x
    assert sp.compose_affine(2, 3) == SymPoly(
        (LinForm.unknown(0, 3), LinForm.unknown(0, 2))
    )


# --- order at zero / division by x^r ----------------------------------------

def test_order_at_zero_of_trace_image():
    assert helpers.trace_image_symbolic().order_at_zero() == 2


def test_order_at_zero_basics():
    assert Poly((1, 1)).order_at_zero() == 0
    with pytest.raises(UndefinedOrderError):
        Poly().order_at_zero()
    with pytest.raises(UndefinedOrderError):
        SymPoly().order_at_zero()


def test_order_at_zero_shift_property():
    rng = random.Random(17)
    for _ in range(30):
        p = helpers.rand_poly(rng)
        if p.is_zero():
            continue
        j = rng.randint(0, 5)
        assert (Poly.monomial(j) * p).order_at_zero() == j + p.order_at_zero()


def test_div_x_pow_matches_trace():
    assert helpers.trace_image_symbolic().div_x_pow(2) == helpers.trace_regularized_symbolic()


@given(polys_st)
def test_div_by_x_pow_zero_is_identity(p):
    assert p.div_x_pow(0) == p


def test_div_x_pow_round_trip():
    rng = random.Random(19)
    for _ in range(50):
        p = helpers.rand_poly(rng)
        r = rng.randint(0, 4)
        assert (Poly.monomial(r) * p).div_x_pow(r) == p


def test_div_x_pow_rejects_low_order_terms():
    with pytest.raises(NonDivisibleError):
        Poly((1, 1)).div_x_pow(1)
    with pytest.raises(NonDivisibleError):
        SymPoly((LinForm.unknown(0),)).div_x_pow(1)
    assert Poly().div_x_pow(3).is_zero()


# --- substitution ------------------------------------------------------------

def test_substitute_trace_solution():
    u = helpers.trace_u_p_symbolic()
    values = helpers.trace_solution_values()
    assert u.substitute(values) == Poly((0, F(-48, 7)))


def test_substitute_without_unknowns_extracts_embedded_poly():
    p = Poly((1, F(2, 3)))
    sp = SymPoly.from_poly(p)
    assert sp.substitute({}) == p
    assert sp.as_poly() == p


def test_substitution_commutes_with_evaluation():
    rng = random.Random(23)
    point = F(1, 3)
    for _ in range(30):
        sp = helpers.rand_sympoly(rng)
        assignment = {i: helpers.rand_fraction(rng) for i in sp.unknowns()}
        direct = sp.substitute(assignment)(point)
        # evaluate each coefficient form first, then Horner by hand
        acc = F(0)
        for form in reversed(sp.coeffs):
            acc = acc * point + form.substitute(assignment)
        assert direct == acc


def test_substitute_missing_unknown_raises():
    sp = SymPoly((LinForm.unknown(2),))
    with pytest.raises(IncompleteAssignmentError):
        sp.substitute({0: F(1)})


@given(sympolys_st)
def test_substitution_linear_in_assignment(sp):
    indices = sp.unknowns()
    a = {i: F(i + 1, 2) for i in indices}
    b = {i: F(3 - i, 5) for i in indices}
    both = {i: a[i] + b[i] for i in indices}
    zeros = {i: F(0) for i in indices}
    base = sp.substitute(zeros)  # the unknown-free part enters once
    assert sp.substitute(both) + base == sp.substitute(a) + sp.substitute(b)


# --- evaluation ---------------------------------------------------------------

def test_eval_solved_polynomial_at_one():
    assert Poly((0, 0, 1, 0, F(-2, 7)))(1) == F(5, 7)


@given(polys_st)
def test_eval_at_zero_gives_constant_coefficient(p):
    assert p(0) == p.coeff(0)


def test_eval_matches_term_summation_oracle():
    rng = random.Random(29)
    for _ in range(100):
        p = helpers.rand_poly(rng)
        x = helpers.rand_fraction(rng)
        expected = sum((c * x**j for j, c in enumerate(p.coeffs)), F(0))
        assert p(x) == expected


# --- display (smoke; full contract in parser tests) ---------------------------

def test_str_does_not_crash():
    assert str(Poly((0, 0, 1, 0, F(-2, 7)))) == "x^2 - 2/7*x^4"
    assert "c0" in str(LinForm.unknown(0))
    assert str(SymPoly((LinForm.unknown(0),))) != ""
