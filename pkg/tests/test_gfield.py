from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from h4matroid.gfield import ONE, TAU, TAU_FLOAT, ZERO, GoldenNumber, format_golden, parse_golden

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
goldens = st.builds(GoldenNumber, fractions, fractions)


def test_tau_is_golden_ratio():
    assert TAU * TAU == TAU + 1
    assert TAU.norm() == -1
    assert TAU.inverse() == TAU - 1
    assert TAU.conj() == 1 - TAU
    assert abs(float(TAU) - (1 + 5**0.5) / 2) < 1e-15
    assert TAU_FLOAT == float(TAU)


def test_powers_follow_fibonacci():
    # τ^n = F(n-1) + F(n) τ
    fib = [0, 1]
    for _ in range(20):
        fib.append(fib[-1] + fib[-2])
    for n in range(1, 20):
        assert TAU**n == GoldenNumber(fib[n - 1], fib[n])
    assert TAU**-1 == TAU - 1
    assert TAU**0 == ONE


@pytest.mark.parametrize(
    "x, expected",
    [
        (GoldenNumber(0, 1), 1),
        (GoldenNumber(-2, 1), -1),  # τ - 2 ≈ -0.38
        (GoldenNumber(2, -1), 1),
        (GoldenNumber(-1, 1), 1),  # 1/τ
        (GoldenNumber(1, -1), -1),
        (GoldenNumber(-8, 5), 1),  # 5τ - 8 ≈ 0.09
        (GoldenNumber(8, -5), -1),
        (ZERO, 0),
    ],
)
def test_exact_sign(x, expected):
    assert x.sign() == expected


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_text_rendering():
    x = GoldenNumber(Fraction(3, 2), Fraction(-1, 2))
    assert format_golden(x) == "3/2+-1/2*t"
    assert parse_golden("3/2+-1/2*t") == x
    assert parse_golden("0+1*t") == TAU


@pytest.mark.parametrize("bad", ["", "1+t", "tau", "1/0+1*t", "1 + 2"])
def test_parse_rejects_malformed(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_golden(bad)


def test_integral_pairs():
    assert GoldenNumber(2, -3).as_int_pair() == (2, -3)
    assert not GoldenNumber(Fraction(1, 2), 0).is_integral()
    with pytest.raises(ValueError):
        GoldenNumber(Fraction(1, 2), 0).as_int_pair()


@given(goldens, goldens, goldens)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == ZERO
    if x:
        assert x * x.inverse() == ONE
        assert (y / x) * x == y


@given(goldens, goldens)
def test_conjugation_is_a_ring_automorphism(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert x * x.conj() == GoldenNumber(x.norm())


@given(goldens, goldens)
def test_order_agrees_with_floats(x, y):
    d = float(x) - float(y)
    if abs(d) > 1e-9:
        assert (x < y) == (d < 0)
    assert (x * y).sign() == x.sign() * y.sign()


@given(goldens)
def test_text_round_trip(x):
    assert parse_golden(format_golden(x)) == x
