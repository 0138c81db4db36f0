from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl4branch.exactnum import (Cyclotomic, E, ScalarParseError, as_rational, conjugate,
                                cyc_arith, cyclotomic_poly, euler_phi, format_scalar,
                                parse_scalar, sqrt_integer)

ORDERS = [1, 3, 4, 5, 8, 12, 60]


@st.composite
def elements(draw, orders=ORDERS):
    m = draw(st.sampled_from(orders))
    n = euler_phi(m)
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                           min_size=n, max_size=n))
    return Cyclotomic.from_coeffs(m, coeffs)


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), elements())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a + 0 == a and a * 1 == a


@settings(max_examples=60, deadline=None)
@given(elements())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1
        assert a / a == 1


@settings(max_examples=60, deadline=None)
@given(elements(), elements())
def test_conjugation_is_an_involutive_automorphism(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@settings(max_examples=60, deadline=None)
@given(elements(orders=[1, 3, 4, 5, 12]), st.sampled_from([2, 3, 5]))
def test_lift_round_trip(a, k):
    big = a.lift(a.order * k)
    assert big == a
    assert hash(big) == hash(a)
    assert big.normalize() == a.normalize()
    assert big.normalize().order <= a.order


@settings(max_examples=60, deadline=None)
@given(elements())
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@settings(max_examples=40, deadline=None)
@given(elements())
def test_absolute_square_is_real_and_positive(a):
    n = a * a.conjugate()
    assert n.conjugate() == n
    assert (n.normalized_trace() > 0) != a.is_zero()


def test_rational_hash_matches_fraction():
    assert hash(Cyclotomic.rational(Fraction(3, 7), 12)) == hash(Fraction(3, 7))
    assert Cyclotomic.rational(5, 8) == 5
    assert {Cyclotomic.rational(2): "x"}[2] == "x"


def test_roots_of_unity():
    assert E(5) ** 5 == 1
    assert E(5) ** 4 != 1
    assert sum((E(7) ** k for k in range(7)), Cyclotomic.rational(0)) == 0
    assert E(4) ** 2 == -1
    assert E(3) * E(3).conjugate() == 1
    assert E(12) ** 3 == E(4)


def test_mixed_order_arithmetic_lifts_to_lcm():
    x = E(3) + E(4)
    assert x.order == 12
    assert x - E(4) == E(3)


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 15, 30])
def test_sqrt_integer_squares_back(n):
    r = sqrt_integer(n)
    assert r * r == n
    assert abs(complex(r) - n ** 0.5) < 1e-9


@pytest.mark.parametrize("n", [0, -3, 4, 12])
def test_sqrt_integer_rejects(n):
    with pytest.raises(ValueError):
        sqrt_integer(n)


def test_gauss_sum_values():
    assert sqrt_integer(2) == E(8) - E(8) ** 3
    assert sqrt_integer(5) == 1 + 2 * (E(5) + E(5) ** 4)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_poly(60)) - 1 == euler_phi(60) == 16


def test_normalize_descends():
    x = (E(15) ** 5).lift(60)
    assert x.order == 60
    assert x.normalize().order == 3
    assert Cyclotomic.rational(7, 12).normalize().order == 1


def test_galois_action():
    assert E(5).galois(2) == E(5) ** 2
    with pytest.raises(ValueError):
        E(6).galois(3)


@pytest.mark.parametrize("text,value", [
    ("3", 3), ("-2/6", Fraction(-1, 3)), ("E(4)^2", -1), ("Sqrt(12)", 2 * sqrt_integer(3)),
    ("(1+Sqrt(5))/2 * (1-Sqrt(5))/2", -1), ("2^3 - 1", 7), ("E(3)^-1", E(3) ** 2),
    ("Sqrt(-1)", E(4)), ("-E(5)^2-E(5)^3", 1 + E(5) + E(5) ** 4),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "E(", "1 +", "foo", "1/0", "(1", "Sqrt(2/3)"])
def test_parse_scalar_errors(text):
    with pytest.raises((ScalarParseError, ZeroDivisionError)):
        parse_scalar(text)


def test_helpers():
    assert as_rational(E(4) ** 2) == -1
    assert as_rational(E(4)) is None
    assert conjugate(E(3)) == E(3) ** 2
    assert conjugate(Fraction(1, 2)) == Fraction(1, 2)
    assert cyc_arith(E(3), E(3), "mul") == E(3) ** 2
    assert cyc_arith(E(3), E(3), "div") == 1
    with pytest.raises(ValueError):
        cyc_arith(1, 2, "pow")
