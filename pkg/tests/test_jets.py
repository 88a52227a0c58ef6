import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tyczlab.jets import Jet, Jet2


def test_variable_and_eval():
    x = Jet.variable(2.0, 5)
    assert x.coef[0] == 2.0 and x.coef[1] == 1.0
    p = 3 * x * x + x - 1
    assert p.coef[0] == pytest.approx(13.0)
    assert p(0.1) == pytest.approx(3 * 2.1 ** 2 + 2.1 - 1)


def test_known_series():
    x = Jet.variable(0.0, 6)
    e = x.exp()
    assert np.allclose(e.coef, [1 / math.factorial(k) for k in range(7)])
    s = x.sin()
    assert np.allclose(s.coef, [0, 1, 0, -1 / 6, 0, 1 / 120, 0], atol=1e-15)
    geom = 1.0 / (1.0 - x)
    assert np.allclose(geom.coef, np.ones(7))


def test_division_and_pow():
    x = Jet.variable(1.5, 8)
    q = (x * x - 1) / (x - 1)      # equals x + 1 as a series at 1.5
    assert np.allclose(q.coef[:2], [2.5, 1.0])
    assert np.allclose(q.coef[2:], 0.0, atol=1e-14)
    r = (x ** 0.5) * (x ** 0.5) - x
    assert np.max(np.abs(r.coef)) < 1e-13


def test_derivatives_scaling():
    x = Jet.variable(0.7, 4)
    j = (2.0 * x).exp()
    # d^k e^{2x} = 2^k e^{2x}
    for k in range(5):
        assert j.derivative(k) == pytest.approx(2.0 ** k * math.exp(1.4), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-0.8, 0.8), min_size=1, max_size=8),
       st.floats(0.3, 3.0))
def test_exp_log_roundtrip(tail, head):
    j = Jet(np.array([head] + tail))
    back = j.log().exp()
    scale = np.max(np.abs(j.coef)) + 1.0
    assert np.max(np.abs(back.coef - j.coef)) <= 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-0.6, 0.6), min_size=1, max_size=7))
def test_sincos_pythagoras(tail):
    j = Jet(np.array([0.4] + tail))
    s, c = j._sincos()
    unit = s * s + c * c
    assert unit.coef[0] == pytest.approx(1.0, abs=1e-13)
    assert np.max(np.abs(unit.coef[1:])) < 1e-12


def test_longdouble_path():
    x = Jet.variable(np.longdouble(0.5), 10, dtype=np.longdouble)
    j = x.exp().log()
    assert j.dtype == np.longdouble
    assert float(j.coef[1]) == pytest.approx(1.0, abs=1e-17)


def test_jet2_product_exactness():
    a = Jet2.variable(0, 0.5, (4, 4))
    b = Jet2.variable(1, 0.25, (4, 4))
    p = (a + b) * (a + b)
    # (x+y)^2 at (0.5, 0.25): value, gradient, Hessian
    assert p.value() == pytest.approx(0.5625)
    assert p.partial(1, 0) == pytest.approx(1.5)
    assert p.partial(1, 1) == pytest.approx(2.0)
    assert p.partial(2, 0) == pytest.approx(2.0)


def test_jet2_exp_log_div():
    a = Jet2.variable(0, 0.3, (5, 5))
    b = Jet2.variable(1, 0.2, (5, 5))
    s = 1.0 + a * b + a
    r = s.log().exp() - s
    assert np.max(np.abs(r.coef)) < 1e-13
    q = s / s
    expect = np.zeros_like(q.coef)
    expect[0, 0] = 1.0
    assert np.max(np.abs(q.coef - expect)) < 1e-13


def test_jet2_matches_univariate_on_diagonal():
    # f(x+y) partials: ∂ᵢ∂ⱼ f(x+y) = f''(x+y)
    from tyczlab.trees import radial_jet2

    f = Jet.variable(0.9, 8).exp()      # e^r at r = 0.9
    phi = radial_jet2(f, (4, 4), (0.9, 0.0))
    for i in range(3):
        for j in range(3):
            assert phi.partial(i, j) == pytest.approx(math.exp(0.9), rel=1e-12)
