import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractalcalc.errors import DomainError
from fractalcalc.laplace import (
    Lemma2,
    Lemma3,
    Lemma4,
    caputo_transform,
    convolution,
    derivative_rule,
    forward_transform,
    frequency_derivative,
    integral_rule,
    invert,
    read_fixtures,
    rl_integral_rule,
    roundtrip_check,
)
from fractalcalc.local_fcalc import Profile, antiderivative, constant, exponential, power
from fractalcalc.nonlocal_fcalc import OrderPair, rl_integral_u
from fractalcalc.ode import nonlocal_solution_u
from fractalcalc.staircase import IDENTITY, TRIADIC, staircase_eval

ALPHA = TRIADIC.alpha
FIXTURES = read_fixtures((Path(__file__).parent / "data" / "transform_fixtures.csv").read_text())


def test_forward_examples():
    assert forward_transform(constant(1.0), 2.0) == pytest.approx(0.5, abs=1e-10)
    assert forward_transform(power(2.0), 1.0) == pytest.approx(2.0, abs=1e-9)
    assert forward_transform(exponential(-1.0), 1.0) == pytest.approx(0.5, abs=1e-10)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("s", [1.5, 3.0])
def test_power_table(n, s):
    assert forward_transform(power(n), s) == pytest.approx(math.factorial(n) / s ** (n + 1),
                                                           rel=1e-9)


def test_forward_rejects_bad_s():
    with pytest.raises(DomainError):
        forward_transform(constant(1.0), 0.0)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(1.0, 5.0))
@settings(max_examples=20, deadline=None)
def test_forward_linear(a, b, s):
    p, q = exponential(-1.0), power(1.0)
    lhs = forward_transform(p.scaled(a) + q.scaled(b), s)
    rhs = a * forward_transform(p, s) + b * forward_transform(q, s)
    assert lhs == pytest.approx(rhs, abs=1e-9)


@pytest.mark.parametrize("expr,s,expected", FIXTURES,
                         ids=[f"{e.name}-{s:g}" for e, s, _ in FIXTURES])
def test_inverse_fixtures(expr, s, expected):
    got = forward_transform(expr.profile(), s, 1e-11)
    assert got == pytest.approx(expected, rel=1e-4)


def test_fixture_expected_values_are_the_rational_shapes():
    for expr, s, expected in FIXTURES:
        assert float(expr.evaluate(s)) == expected


@pytest.mark.parametrize("expr,grid,tol", [
    (Lemma2(1, 1, 1), (2, 3, 5), 1e-6),
    (Lemma2(0.5, ALPHA, 1), (2, 4), 1e-4),
    (Lemma3(1, 0.5, 0.2, 1), (3, 6), 1e-4),
    (Lemma4(1, 0.5, 0.3, 0.2, 0.5), (3, 6), 1e-4),
])
def test_roundtrip_examples(expr, grid, tol):
    assert roundtrip_check(expr, grid) <= tol


def test_roundtrip_rejects_invalid_s():
    with pytest.raises(DomainError):
        roundtrip_check(Lemma2(1, 1, 5), (2,))


def test_inverse_examples():
    assert Lemma2(1, 1, 1).inverse_u(1.0) == pytest.approx(math.exp(-1), abs=1e-14)
    assert Lemma4(1, 1, 0, 0, 1).inverse_u(1.0) == pytest.approx(math.exp(-1), abs=1e-14)
    x = np.array([0.1, 0.4, 1.0])
    for beta in (0.33, 0.25):
        np.testing.assert_allclose(invert(Lemma2(beta, ALPHA, 1.0), x),
                                   nonlocal_solution_u(staircase_eval(x), beta, ALPHA), rtol=1e-11)


def test_lemma3_lemma4_degenerate_cases():
    u = np.array([0.2, 0.9])
    # zeta = mu: 1/(1.5 s) has the constant inverse 1/1.5
    np.testing.assert_allclose(Lemma3(1.0, 1.0, 0.5, 0).inverse_u(u), 1 / 1.5, rtol=1e-13)
    # b = 0: s^xi/(s^zeta + a s^mu) = s^(xi-mu)/(s^(zeta-mu) + a)
    np.testing.assert_allclose(Lemma4(1.0, 0.5, 0.3, 0.2, 0.0).inverse_u(u),
                               Lemma2(0.5, 0.7, 0.2).inverse_u(u), rtol=1e-11)
    # a = 0: s^xi/(s^zeta + b) is a Lemma2 shape in zeta with mu = zeta - xi
    np.testing.assert_allclose(Lemma4(1.2, 0.4, 0.3, 0.0, 0.5).inverse_u(u),
                               Lemma2(1.2, 0.9, 0.5).inverse_u(u), rtol=1e-11)


def test_shape_validation():
    with pytest.raises(DomainError):
        Lemma2(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        Lemma3(0.5, 1.0, 1.0, 0)
    with pytest.raises(DomainError):
        Lemma3(1.0, 0.5, 1.0, -1)
    with pytest.raises(DomainError):
        Lemma4(1.0, 0.5, 1.0, 0.2, 0.1)


# --- transform rules ---------------------------------------------------------


def test_caputo_transform_examples():
    s = 2.0
    F = 1 / (s + 1)
    assert caputo_transform(F, s, OrderPair(1.0, 1.0), [1.0]) == pytest.approx(-1 / (s + 1))
    assert caputo_transform(0.37, 1.0, OrderPair(ALPHA, 0.5), [0.0]) == pytest.approx(0.37)
    with pytest.raises(DomainError):
        caputo_transform(F, s, OrderPair(ALPHA, 0.5), [1.0, 0.0])


@pytest.mark.parametrize("beta", [0.33, 0.25])
def test_caputo_transform_gives_example_two(beta):
    # (s^alpha Y - 1)/s^(alpha-beta) + Y = 0  =>  Y = s^(beta-alpha)/(1+s^beta)
    for s in (2.0, 3.0, 5.0):
        want = s ** (beta - ALPHA) / (1 + s**beta)
        lhs = caputo_transform(want, s, OrderPair(ALPHA, beta), [1.0]) + want
        assert lhs == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("s", [1.5, 2.0, 4.0])
def test_derivative_rule_fixture(s):
    # g = (1+u)^3 with g(0) = 1, g'(0) = 3
    g = Profile(lambda u: (1 + np.asarray(u)) ** 3, "(1+u)^3")
    dg = Profile(lambda u: 3 * (1 + np.asarray(u)) ** 2, "3(1+u)^2")
    d2g = Profile(lambda u: 6 * (1 + np.asarray(u)), "6(1+u)")
    F = forward_transform(g, s)
    assert derivative_rule(F, s, [1.0]) == pytest.approx(forward_transform(dg, s), rel=1e-9)
    assert derivative_rule(F, s, [1.0, 3.0]) == pytest.approx(forward_transform(d2g, s),
                                                              rel=1e-9)


@pytest.mark.parametrize("s", [1.5, 3.0])
def test_integral_rule_fixture(s):
    p = exponential(-0.5)
    got = forward_transform(antiderivative(p), s)
    assert got == pytest.approx(integral_rule(forward_transform(p, s), s), rel=1e-9)


@pytest.mark.parametrize("beta", [0.25, 0.5])
@pytest.mark.parametrize("s", [2.0, 4.0])
def test_rl_integral_rule(beta, s):
    p = Profile(lambda u: np.asarray(rl_integral_u(constant(1.0), beta, np.asarray(u))),
                "I^beta 1")
    got = forward_transform(p, s, 1e-10)
    assert got == pytest.approx(rl_integral_rule(1 / s, s, beta), rel=1e-5)


@pytest.mark.parametrize("n", [1, 2])
def test_frequency_derivative(n):
    p = exponential(-1.0)
    s = 2.0
    got = frequency_derivative(lambda v: forward_transform(p, v), s, n)
    want = math.factorial(n) / (s + 1) ** (n + 1)  # transform of u^n e^-u
    assert got == pytest.approx(want, rel=1e-5)


@pytest.mark.parametrize("m", [0.5, 1.0, 2.0])
def test_convolution_theorem(m):
    p, q = power(m), power(1.0)
    conv = convolution(p, q)
    for s in (1.5, 3.0, 5.0):
        want = forward_transform(p, s) * forward_transform(q, s)
        assert forward_transform(conv, s, 1e-10) == pytest.approx(want, rel=1e-5)


def test_classical_reduction_on_identity_staircase():
    # with S(x) = x every entry is the classical transform
    x = np.array([0.25, 0.5, 1.0])
    np.testing.assert_allclose(invert(Lemma2(1, 1, 1), x, IDENTITY), np.exp(-x), rtol=1e-13)
    got = caputo_transform(1 / 3, 2.0, OrderPair(1.0, 0.5), [1.0])
    assert got == pytest.approx(2.0**0.5 * (1 / 3) - 2.0 ** (0.5 - 1))
