from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from dynfree.errors import FieldMismatch, NotMoebius, ZeroDenominator
from dynfree.fields import GF, QQ
from dynfree.ratfun import (INF, chebyshev, compose, conjugate, constant, derivative, evaluate,
                            iterate, moebius, moebius_inverse, normalize, polynomial, to_expr, x)
from strategies import points, polys, ratfuns

X = sympy.Symbol("x")


def as_sympy(f):
    num = sum(sympy.Integer(c) * X ** i for i, c in enumerate(f.num))
    den = sum(sympy.Integer(c) * X ** i for i, c in enumerate(f.den))
    return num / den


def p(*coeffs):
    return polynomial(coeffs)


# -- normalize ----------------------------------------------------------------------------

def test_normalize_divides_joint_content():
    f = normalize([2, 0, 2], [0, 4])
    assert (f.num, f.den) == ((1, 0, 1), (0, 2))


def test_normalize_cancels_common_factor():
    f = normalize([-1, 0, 1], [-1, 1])
    assert (f.num, f.den) == ((1, 1), (1,))


def test_normalize_makes_denominator_leading_positive():
    f = normalize([0, 1], [-2])
    assert (f.num, f.den) == ((0, -1), (2,))


def test_normalize_rational_coefficients():
    f = normalize([Fraction(1, 2), Fraction(1, 3)], [1])
    assert (f.num, f.den) == ((3, 2), (6,))


def test_normalize_over_prime_field_is_monic_in_den():
    f = normalize([1, 2], [3, 4], GF(5))
    assert f.den[-1] == 1
    assert (f.num, f.den) == ((4, 3), (2, 1))


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        normalize([1], [0])


def test_zero_numerator_is_canonical():
    assert normalize([], [0, 5]) == constant(0)


@given(polys(), polys(), st.integers(-9, 9).filter(bool))
def test_canonical_form_is_scale_invariant(num, den, a):
    assert normalize([a * c for c in num], [a * c for c in den]) == normalize(num, den)


@given(ratfuns())
def test_normalize_is_idempotent(f):
    assert normalize(f.num, f.den) == f


# -- compose ------------------------------------------------------------------------------

def test_compose_monomials():
    assert compose(p(0, 0, 1), p(0, 0, 0, 1)) == p(0, 0, 0, 0, 0, 0, 1)


def test_compose_moebius():
    assert compose(normalize([1], [0, 1]), normalize([1, 1], [-1, 1])) == normalize([-1, 1], [1, 1])


def test_compose_chebyshev_square():
    T2 = p(-2, 0, 1)
    assert compose(T2, T2) == p(2, 0, -4, 0, 1) == chebyshev(4)


def test_compose_with_constant_gives_constant():
    assert compose(p(0, 0, 1), constant(3)) == constant(9)
    assert compose(constant(3), p(0, 0, 1)) == constant(3)


def test_compose_field_mismatch():
    with pytest.raises(FieldMismatch):
        compose(x(QQ), x(GF(3)))


@given(ratfuns(), ratfuns())
def test_compose_matches_sympy(f, g):
    expected = sympy.cancel(as_sympy(f).subs(X, as_sympy(g)))
    assert sympy.simplify(as_sympy(compose(f, g)) - expected) == 0


@given(ratfuns(), ratfuns())
def test_degree_is_multiplicative(f, g):
    assert compose(f, g).degree == f.degree * g.degree


@given(ratfuns(max_deg=2), ratfuns(max_deg=2), ratfuns(max_deg=2))
def test_associativity(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(ratfuns(max_deg=2), ratfuns(max_deg=2), ratfuns(max_deg=2))
def test_right_cancellation(a, b, c):
    # a∘c == b∘c must force a == b
    assert (compose(a, c) == compose(b, c)) == (a == b)


@given(ratfuns(max_deg=2, field=GF(7)), ratfuns(max_deg=2, field=GF(7)))
def test_degree_multiplicative_mod_p(f, g):
    assert compose(f, g).degree == f.degree * g.degree


@given(ratfuns(), ratfuns(), points)
def test_evaluate_compose_compatibility(f, g, z):
    assert evaluate(compose(f, g), z) == evaluate(f, evaluate(g, z))


@given(ratfuns())
def test_evaluate_compose_at_poles(f):
    # every zero of the denominator maps to infinity
    for z in [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]:
        if sum(c * z ** i for i, c in enumerate(f.den)) == 0:
            assert evaluate(f, z) is INF


# -- evaluate, derivative -------------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(normalize([1], [0, 1]), 0) is INF
    assert evaluate(p(0, 0, 1), Fraction(2, 3)) == Fraction(4, 9)
    assert evaluate(normalize([1, 0, 1], [-1, 1]), INF) is INF
    assert evaluate(normalize([1, 0, 2], [3, 0, 4]), INF) == Fraction(1, 2)
    assert evaluate(normalize([1], [0, 1]), INF) == 0


def test_derivative_examples():
    assert derivative(p(0, 0, 1)) == p(0, 2)
    assert derivative(normalize([1], [0, 1])) == normalize([-1], [0, 0, 1])
    assert evaluate(derivative(p(-2, 0, 1)), 2) == 4


def test_derivative_can_vanish_in_characteristic_p():
    assert derivative(polynomial([0, 0, 0, 1], GF(3))) == constant(0, GF(3))


@given(ratfuns())
def test_derivative_matches_sympy(f):
    assert sympy.simplify(as_sympy(derivative(f)) - sympy.diff(as_sympy(f), X)) == 0


# -- conjugate, chebyshev -------------------------------------------------------------------

def test_conjugate_examples():
    assert conjugate(p(0, 0, 2), moebius(1, 0, 0, 2)) == p(0, 0, 1)
    assert conjugate(p(0, 0, 1), x()) == p(0, 0, 1)
    assert conjugate(p(0, 0, 1), p(0, 2)) == p(0, 0, 2)


def test_conjugate_rejects_non_moebius():
    with pytest.raises(NotMoebius):
        conjugate(p(0, 0, 1), p(0, 0, 1))


@given(ratfuns(), st.tuples(*[st.integers(-4, 4)] * 4))
def test_conjugate_round_trip(f, abcd):
    a, b, c, d = abcd
    assume(a * d - b * c != 0)
    s = moebius(a, b, c, d)
    g = conjugate(f, s)
    assert g.degree == f.degree
    assert conjugate(g, moebius_inverse(s)) == f


def test_chebyshev_examples():
    assert chebyshev(1) == x()
    assert chebyshev(2) == p(-2, 0, 1)
    assert chebyshev(3) == p(0, -3, 0, 1)
    assert compose(chebyshev(2), chebyshev(3)) == chebyshev(6)


@pytest.mark.parametrize("a,b", [(2, 5), (3, 4), (4, 4), (5, 3)])
def test_chebyshev_semigroup_law(a, b):
    assert compose(chebyshev(a), chebyshev(b)) == chebyshev(a * b)


def test_chebyshev_normalization():
    # T_d(z + 1/z) = z^d + z^-d
    z = sympy.Symbol("z")
    for d in range(1, 7):
        T = as_sympy(chebyshev(d)).subs(X, z + 1 / z)
        assert sympy.simplify(T - (z ** d + z ** -d)) == 0


def test_iterate():
    assert iterate(p(0, 0, 1), 3) == p(*([0] * 8 + [1]))
    assert iterate(p(0, 0, 1), 0) == x()


def test_to_expr_forms():
    assert to_expr(normalize([2], [0, 1])) == "2/x"
    assert to_expr(normalize([0, 1], [6])) == "x/6"
    assert to_expr(normalize([0, -1], [2])) == "-x/2"
    assert to_expr(normalize([1, 0, 1], [0, 2])) == "(x^2 + 1)/(2*x)"
