from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binpoly.errors import DivisionByZero, MixedRadicand
from binpoly.scalars import ONE, PHI, SQRT2, SQRT5, ZERO, QuadScalar

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def scalars(draw, d=None):
    d = draw(st.sampled_from((2, 5))) if d is None else d
    return QuadScalar(draw(rationals), draw(rationals), d)


def same_field():
    return st.sampled_from((2, 5)).flatmap(lambda d: st.tuples(scalars(d), scalars(d), scalars(d)))


@settings(max_examples=200, deadline=None)
@given(same_field())
def test_field_axioms(xyz):
    x, y, z = xyz
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * ONE == x
    assert x - x == 0
    if x:
        assert x * x.inv() == ONE
        assert (y / x) * x == y


@settings(max_examples=200, deadline=None)
@given(same_field())
def test_total_order_compatible_with_field(xyz):
    x, y, z = xyz
    assert (x < y) + (x == y) + (x > y) == 1
    if x < y:
        assert x + z < y + z
        if z > 0:
            assert x * z < y * z
    assert (x * x).sign() >= 0
    # the order agrees with the real embedding when the gap is clear
    if abs(float(x) - float(y)) > 1e-9:
        assert (x < y) == (float(x) < float(y))


@settings(max_examples=200, deadline=None)
@given(scalars())
def test_parse_round_trip(x):
    assert QuadScalar.parse(str(x)) == x


def test_known_values():
    assert SQRT2 * SQRT2 == 2
    assert SQRT5 * SQRT5 == 5
    assert PHI * PHI == PHI + 1
    assert PHI.inv() == PHI - 1
    assert QuadScalar(Fraction(1, 2), Fraction(1, 2), 5) == PHI
    assert (SQRT2 - 1) * (SQRT2 + 1) == 1
    assert SQRT2 - 1 > 0 and 3 - 2 * SQRT2 > 0
    assert 2 - 3 * PHI.inv() > 0 > 2 - 4 * PHI.inv()


def test_sign_of_close_irrationals():
    # consecutive continued-fraction convergents of sqrt 2
    assert QuadScalar(Fraction(1393, 985)) < SQRT2 < QuadScalar(Fraction(3363, 2378))
    assert QuadScalar(Fraction(3363, 2378)) - SQRT2 < Fraction(1, 10 ** 6)


def test_rational_mixes_with_any_field():
    assert (QuadScalar(3) + SQRT2).d == 2
    assert (QuadScalar(3) * SQRT5).d == 5
    assert (SQRT2 - SQRT2 + SQRT5).d == 5


def test_mixed_radicand():
    with pytest.raises(MixedRadicand):
        SQRT2 + SQRT5
    with pytest.raises(MixedRadicand):
        SQRT2 < SQRT5


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ZERO.inv()
    with pytest.raises(DivisionByZero):
        SQRT2 / 0


@pytest.mark.parametrize("text", ["", "sqrt(2)*", "1+2*sqrt(3)", "x"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ValueError):
        QuadScalar.parse(text)
