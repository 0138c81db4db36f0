from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl4branch.exactnum import E
from sl4branch.polyrat import (Factor, FactoredDen, MultiPoly, RatFun, cancel,
                               divide_by_univariate, equal, merge_conjugates, parse_univariate,
                               ratfun_arith, series_coeffs, split_roots_of_unity, upoly_divmod,
                               upoly_mul, upoly_series_inverse)

t, u, w = (MultiPoly.var(v) for v in "tuw")
one = MultiPoly.const(1)

small_int = st.integers(min_value=-4, max_value=4)


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), small_int, max_size=6))
    return MultiPoly(terms)


@settings(max_examples=80, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(), st.sampled_from([0, 1, 2]), st.lists(small_int, min_size=1, max_size=3))
def test_exact_division_round_trip(p, var, tail):
    coeffs = [1] + tail
    q = MultiPoly.univariate(var, coeffs)
    assert divide_by_univariate(p * q, var, coeffs) == p


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_ratfun_add_and_equal(a, b):
    den1 = FactoredDen({Factor.make(0, [1, -1]): 2})
    den2 = FactoredDen({Factor.make(1, [1, 1]): 1, Factor.make(0, [1, -1]): 1})
    x, y = RatFun(a, den1), RatFun(b, den2)
    s = x + y
    assert equal(s - y, x)
    assert equal(ratfun_arith(x, y, "add"), s)
    assert equal(ratfun_arith(x, y, "mul"), x * y)


def test_univariate_helpers():
    assert upoly_mul([1, 1], [1, -1]) == [1, 0, -1]
    q, r = upoly_divmod([1, 0, -1], [1, 1])
    assert q == [1, -1] and not any(r)
    inv = upoly_series_inverse([1, -1], 5)
    assert inv == [1, 1, 1, 1, 1, 1]


def test_series_of_geometric():
    R = RatFun(one, FactoredDen({Factor.make(0, [1, -1]): 4}))
    c = series_coeffs(R, 6)
    # 1/(1-t)^4 has coefficients binom(n+3, 3)
    assert [c[(n, 0, 0)] for n in range(7)] == [1, 4, 10, 20, 35, 56, 84]
    assert c[(1, 1, 0)] == 0


def test_split_roots_of_unity():
    lin, rest = split_roots_of_unity(0, [1, 0, 0, 0, -1], 4)   # 1 - t^4
    assert rest is None
    assert sum(lin.values()) == 4
    lin, rest = split_roots_of_unity(0, [1, -1, 1], 6)       # 1 - t + t^2 = Phi_6(t)
    assert rest is None and {f.root for f in lin} == {(6, 1), (6, 5)}
    lin, rest = split_roots_of_unity(0, [1, -3, 1], 12)       # not cyclotomic
    assert not lin and rest == Factor.make(0, [1, -3, 1])


def test_merge_conjugates():
    den = FactoredDen({Factor.linear(0, 4, 1): 2, Factor.linear(0, 4, 3): 1,
                       Factor.linear(0, 1, 0): 3})
    merged = merge_conjugates(den)
    assert merged == FactoredDen({Factor.make(0, [1, 0, 1]): 1, Factor.linear(0, 4, 1): 1,
                                  Factor.make(0, [1, -1]): 3})
    assert not merged.is_rational()


def test_cancel_removes_common_factor():
    f = Factor.make(0, [1, -1])
    R = RatFun((one - t) * (one + u), FactoredDen({f: 2}))
    C = cancel(R)
    assert C.den == FactoredDen({f: 1})
    assert C.num == one + u
    assert equal(R, C)


def test_subs_and_rename():
    den = FactoredDen({Factor.make(0, [1, -1]): 1, Factor.make(2, [1, -1]): 2})
    R = RatFun(one + t * w, den)
    S = R.subs({2: 0})
    assert equal(S, RatFun(one, FactoredDen({Factor.make(0, [1, -1]): 1})))
    V = R.subs({0: Fraction(1, 2)})
    assert equal(V, RatFun((one + w.scale(Fraction(1, 2))).scale(2),
                           FactoredDen({Factor.make(2, [1, -1]): 2})))
    Rt = R.rename({0: 2, 2: 0})
    assert equal(Rt, RatFun(one + t * w, FactoredDen({Factor.make(2, [1, -1]): 1,
                                                      Factor.make(0, [1, -1]): 2})))
    with pytest.raises(ZeroDivisionError):
        R.subs({0: 1})


def test_cyclotomic_coefficients():
    p = MultiPoly.univariate(0, [1, -E(3)])
    q = MultiPoly.univariate(0, [1, -E(3) ** 2])
    assert p * q == MultiPoly.univariate(0, [1, 1, 1])


def test_parse_univariate_and_formatting():
    assert parse_univariate("t^8-t^6+t^4-t^2+1", 0) == [1, 0, -1, 0, 1, 0, -1, 0, 1]
    assert parse_univariate("2*u - 3/2", 1) == [Fraction(-3, 2), 2]
    assert str(t * t - u.scale(3) + one) == "t^2 - 3*u + 1"
    assert str(Factor.make(1, [1, -1])) == "1 - u"
    assert str(FactoredDen({Factor.make(1, [1, -1]): 2})) == "(1 - u)^2"


def test_factor_requires_unit_constant():
    with pytest.raises(ValueError):
        Factor.make(0, [2, 1])
