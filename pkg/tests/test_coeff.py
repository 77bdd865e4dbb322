from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.coeff import (ONE, S, U, X1, X2, ZERO, MixedModeError, Scalar, beta, evaluate,
                            parse, q_power, to_text)

coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*(st.integers(-3, 3) for _ in range(4)))
scalars = st.dictionaries(exps, coefs, max_size=4).map(Scalar)
points = st.fixed_dictionaries({
    n: st.sampled_from([Fraction(1, 2), Fraction(2), Fraction(3), Fraction(-2, 3), Fraction(5, 4)])
    for n in ("s", "x1", "x2", "u")})


def test_beta_form():
    assert beta() == -S ** 2 - S ** -2


def test_beta_at_s_one():
    assert evaluate(beta(), {"s": 1}).value == -2


def test_beta_squared():
    assert beta() * beta() == S ** 4 + 2 + S ** -4


def test_evaluate_examples():
    assert evaluate(S ** 2 + S ** -2, {"s": 2}).value == pytest.approx(4.25)
    assert evaluate(beta(), {"s": 1j}).value == pytest.approx(2)
    assert evaluate(X1 + X1 ** -1, {"x1": 3}).value == pytest.approx(10 / 3)


def test_evaluate_errors():
    with pytest.raises(KeyError):
        evaluate(X1 * S, {"s": 2})
    with pytest.raises(ZeroDivisionError):
        evaluate(S ** -1, {"s": 0})


def test_ring_examples():
    assert S * S ** -1 == ONE
    assert beta() ** 0 == ONE
    assert beta() + (S ** 2 + S ** -2) == ZERO
    assert (beta() + (S ** 2 + S ** -2)).is_zero


def test_zero_support_not_stored():
    p = Scalar({(1, 0, 0, 0): 0, (0, 0, 0, 0): 3})
    assert p.terms == {(0, 0, 0, 0): 3}


def test_mixed_mode_rejected():
    with pytest.raises(MixedModeError):
        S + Scalar.numeric(1.0)


def test_numeric_tolerance():
    assert Scalar.numeric(1.0) == Scalar.numeric(1.0 + 1e-14)
    assert Scalar.numeric(1.0) != Scalar.numeric(1.0 + 1e-9)


def test_q_power_half_integer():
    assert q_power(Fraction(1, 2)) == S
    with pytest.raises(ValueError):
        q_power(Fraction(1, 3))


def test_text_round_trip_with_i():
    from artifact.coeff import I
    p = I * S - I * S ** -1 + Fraction(3, 2) * X2 * U ** -1
    assert parse(to_text(p)) == p


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, points)
def test_evaluate_is_multiplicative(p, q, a):
    lhs = evaluate(p * q, a).value
    rhs = evaluate(p, a).value * evaluate(q, a).value
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))


@settings(max_examples=60, deadline=None)
@given(scalars)
def test_renormalizing_changes_nothing(p):
    assert Scalar(p.terms) == p
    assert Scalar(p.terms).terms == p.terms


@settings(max_examples=60, deadline=None)
@given(scalars)
def test_text_round_trip(p):
    assert parse(to_text(p)) == p


@settings(max_examples=40, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert p - p == ZERO
