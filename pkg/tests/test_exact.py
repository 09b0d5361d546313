from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from quivcusp.exact import (RatFunc, RatPoly, binomial_poly, conjugate, format_rational, mobius,
                            partitions_of, poly_interpolate, rational)

from strategies import polys, small_fracs

t = RatPoly.t()


def test_rational_parsing_and_format():
    assert rational("3/6") == Fraction(1, 2)
    assert rational(-4) == Fraction(-4)
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(6, 3)) == "2"
    with pytest.raises(TypeError):
        rational(0.5)


def test_ratpoly_basics():
    p = RatPoly([0, 1, 1])
    assert p == t ** 2 + t
    assert p.degree == 2
    assert RatPoly([1, 0, 0]).coeffs == (Fraction(1),)
    assert RatPoly().degree == -1 and not RatPoly()
    assert p(3) == 12
    assert p.subs_power(2) == t ** 4 + t ** 2
    assert str(p) == "t^2 + t"
    assert str(RatPoly([Fraction(1, 2), 0, -1])) == "-t^2 + 1/2"
    assert p.latex() == "t^{2} + t"
    assert RatPoly.from_json(p.to_json()) == p
    assert RatPoly([Fraction(1, 3)]).to_json() == ["1/3"]
    assert RatPoly.const(5) == 5


def test_divmod_and_gcd():
    a = (t - 1) * (t + 2) * (t ** 2 + 1)
    b = (t - 1) * (t + 3)
    assert a.gcd(b) == t - 1
    q, r = divmod(a, b)
    assert q * b + r == a and r.degree < b.degree
    assert a.exact_div(t + 2) == (t - 1) * (t ** 2 + 1)
    with pytest.raises(ArithmeticError):
        a.exact_div(t + 5)


def test_ratfunc_normalisation():
    f = RatFunc((t - 1) * (t + 1) * 2, (t - 1) * 4)
    assert f.is_polynomial() and f.to_poly() == (t + 1) / 2
    g = RatFunc(t, 2 * t + 2)
    assert g.den == t + 1 and g.num == t / 2
    assert g + RatFunc(RatPoly.one(), t + 1) * Fraction(1, 2) == RatFunc(RatPoly.const(Fraction(1, 2)))
    with pytest.raises(ZeroDivisionError):
        RatFunc(t, RatPoly.zero())
    assert (RatFunc(t ** 2 - 1, t - 1)) == t + 1
    assert RatFunc(t, t ** 2 - 1)(3) == Fraction(3, 8)


@given(polys(), polys(), st.lists(small_fracs, min_size=1, max_size=50))
def test_evaluation_is_multiplicative(P, Q, xs):
    PQ = P * Q
    for x in xs:
        assert PQ(x) == P(x) * Q(x)


@given(polys())
def test_interpolation_roundtrip(P):
    n = max(P.degree, 0) + 1
    samples = [(x, P(x)) for x in range(-n // 2, n - n // 2)]
    assert poly_interpolate(samples) == P


def test_interpolation_examples():
    assert poly_interpolate([(1, 5), (2, 5), (3, 5)]) == 5
    assert poly_interpolate([(0, 0), (1, 1), (2, 4)]) == t ** 2
    assert poly_interpolate([(2, 6), (3, 12), (5, 30), (7, 56)]) == t ** 2 + t
    with pytest.raises(ValueError, match="degenerate sample set"):
        poly_interpolate([(1, 2), (1, 3)])
    with pytest.raises(ValueError):
        poly_interpolate([])


def test_interpolation_against_sympy():
    pts = [(Fraction(k, 3), Fraction(k * k - 7, k + 11)) for k in range(-3, 5)]
    ours = poly_interpolate(pts)
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.interpolate([(sympy.Rational(a.numerator, a.denominator),
                                         sympy.Rational(b.numerator, b.denominator)) for a, b in pts], x), x)
    assert [Fraction(int(c.p), int(c.q)) for c in reversed(ref.all_coeffs())] == list(ours.coeffs)


def test_binomial_poly():
    assert binomial_poly(t, 0) == 1
    assert binomial_poly(t, 2) == (t ** 2 - t) / 2
    assert binomial_poly(RatPoly.const(3), 2) == 3


@given(st.integers(0, 8), st.integers(0, 20))
def test_binomial_poly_matches_integer_binomial(k, m):
    P = t ** 2 - t + 1
    if P(m) >= k:
        assert binomial_poly(P, k)(m) == comb(int(P(m)), k)
    assert binomial_poly(t, k)(m) == comb(m, k)


def test_mobius():
    assert [mobius(l) for l in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    with pytest.raises(ValueError):
        mobius(0)


def _count_partitions(n, m=None):
    if m is None:
        m = n
    if n == 0:
        return 1
    return sum(_count_partitions(n - k, k) for k in range(1, min(n, m) + 1))


def test_partitions():
    assert list(partitions_of(0)) == [()]
    assert list(partitions_of(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert len(list(partitions_of(6))) == 11
    for n in range(21):
        ps = list(partitions_of(n))
        assert len(ps) == len(set(ps)) == _count_partitions(n)
        assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in ps)
        assert ps == sorted(ps, reverse=True)
    assert conjugate((3, 1)) == (2, 1, 1)
