import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropbundles.puiseux import (ONE, T, ZERO, PuiseuxScalar, format_scalar, in_valuation_ring, is_ok_unit,
                                 parse_scalar, random_scalar, valuation)
from tropbundles.semiring import NEG_INF


def test_valuation_examples():
    assert valuation(parse_scalar("t^2 + 5*t^3")) == -2
    assert valuation(ZERO) == NEG_INF
    assert valuation(parse_scalar("t^(-1/3)")) == Fraction(1, 3)
    assert valuation(parse_scalar("1/(t - t^2)")) == 1


def test_valuation_ring():
    assert in_valuation_ring(T) and in_valuation_ring(ONE)
    assert not in_valuation_ring(T.inverse())
    assert is_ok_unit(parse_scalar("3 + t")) and not is_ok_unit(T)


def test_normal_form_is_unique():
    a = parse_scalar("(t - t^2)/(1 - t)")
    assert a == T
    b = PuiseuxScalar.make([1, 0, 1], N=2)  # 1 + s^2 with s = t^(1/2)
    assert b.N == 1 and b == parse_scalar("1 + t")
    assert PuiseuxScalar.monomial(2, Fraction(4, 6)) == parse_scalar("2*t^(2/3)")


def test_formatting_roundtrips():
    for text in ["0", "1", "-t", "t^(1/2)", "3/2*t^-2", "(1+t)/(1-t^(1/3))"]:
        x = parse_scalar(text)
        assert parse_scalar(format_scalar(x)) == x


def test_parse_rejects_other_symbols():
    with pytest.raises(ValueError):
        parse_scalar("t + y")
    with pytest.raises(ValueError):
        parse_scalar("t^pi")


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


seeds = st.integers(0, 10 ** 6)


def draw(seed):
    return random_scalar(random.Random(seed))


@given(seeds, seeds, seeds)
@settings(max_examples=100, deadline=None)
def test_field_axioms(s1, s2, s3):
    a, b, c = draw(s1), draw(s2), draw(s3)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@given(seeds, seeds)
@settings(max_examples=100, deadline=None)
def test_valuation_is_multiplicative_and_ultrametric(s1, s2):
    a, b = draw(s1), draw(s2)
    if not a.is_zero() and not b.is_zero():
        assert valuation(a * b) == valuation(a) + valuation(b)
    s = a + b
    if not s.is_zero():
        assert valuation(s) <= max(valuation(a), valuation(b))
    if valuation(a) != valuation(b):
        assert valuation(s) == max(valuation(a), valuation(b))


def test_leading_coefficient():
    assert parse_scalar("3*t^2 + t^5").leading_coefficient() == 3
    assert PuiseuxScalar.rational(Fraction(-2, 7)).order() == 0
