import math
from fractions import Fraction

import numpy as np
import pytest

from tyczlab.errors import ParamOutOfRange
from tyczlab.szego import (
    DistortionProfile,
    TailBehavior,
    eulerian_q,
    fiber_series,
    logterm_fit,
    phi_series,
    polylog,
    polylog_jet,
    power_sum,
    psi_h_probe,
)


def test_eulerian_small_cases():
    assert eulerian_q(0) == (Fraction(1),)
    assert eulerian_q(1) == (Fraction(0), Fraction(1))
    assert eulerian_q(2) == (Fraction(0), Fraction(1), Fraction(1))
    assert eulerian_q(3) == (Fraction(0), Fraction(1), Fraction(4), Fraction(1))


def test_eulerian_at_one_is_factorial():
    for k in range(11):
        assert sum(eulerian_q(k)) == Fraction(math.factorial(k))


@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_power_sum_vs_partial_sums(k):
    t = 0.9
    brute = sum((m ** k) * t ** m for m in range(1, 5000))
    assert power_sum(k, t) == pytest.approx(brute, rel=1e-12)


def test_polylog_values():
    t = 0.7
    assert polylog(1, t) == pytest.approx(-math.log(1 - t), rel=1e-14)
    brute2 = sum(t ** m / m ** 2 for m in range(1, 4000))
    assert polylog(2, t) == pytest.approx(brute2, rel=1e-13)
    brute3 = sum(t ** m / m ** 3 for m in range(1, 4000))
    assert polylog(3, t) == pytest.approx(brute3, rel=1e-13)
    assert polylog(0, t) == pytest.approx(t / (1 - t), rel=1e-14)
    assert polylog(-2, t) == pytest.approx(power_sum(2, t), rel=1e-14)


def test_polylog_jet_derivative_recursion():
    t = 0.6
    j = polylog_jet(3, t, 2)
    assert j.coef[1] == pytest.approx(polylog(2, t) / t, rel=1e-12)
    # second derivative: d²Li₃ = d/dt[Li₂/t] = Li₁/t² − Li₂/t²
    d2 = (polylog(1, t) - polylog(2, t)) / t ** 2
    assert 2.0 * j.coef[2] == pytest.approx(d2, rel=1e-12)


def test_profile_parsing():
    p = DistortionProfile.from_string("m^2 - 2.5*m + 2.5", n=2)
    assert p.terms == ((2, 1.0), (1, -2.5), (0, 2.5))
    p = DistortionProfile.from_string("m^2 + 1/m", n=2)
    assert p.terms == ((2, 1.0), (-1, 1.0))
    assert p(2.0) == pytest.approx(4.5)
    with pytest.raises(ParamOutOfRange):
        DistortionProfile.from_string("what", n=1)


def test_phi_closed_form_values():
    prof = DistortionProfile(n=2, terms=((2, 1.0),), T0=0.0)
    value, _ = phi_series(prof, 0.5)
    assert value == pytest.approx(0.75, rel=1e-14)       # q₂(1/2) = 1/2 + 1/4

    const = DistortionProfile(n=0, terms=((0, 1.0),), T0=1.0)
    assert phi_series(const, 0.37)[0] == pytest.approx(1.0, rel=1e-14)

    mixed = DistortionProfile(n=2, terms=((2, 1.0), (-1, 1.0)), T0=0.0)
    expect = (0.9 + 0.81) + 0.001 * (-math.log(0.1))
    assert phi_series(mixed, 0.9)[0] == pytest.approx(expect, rel=1e-12)


def test_phi_bounded_derivatives_polynomial_profile():
    # all derivatives up to n+3 stay bounded on t = 1 − 2^{-i}
    prof = DistortionProfile(n=2, terms=((2, 1.0), (1, -0.5), (0, 0.25)), T0=0.1)
    sup = np.zeros(6)
    for i in range(2, 21):
        _, derivs = phi_series(prof, 1.0 - 2.0 ** -i, order=5)
        sup = np.maximum(sup, np.abs(derivs))
    assert np.all(np.isfinite(sup))
    # and the last grid refinements no longer move the sup (stabilized)
    _, at20 = phi_series(prof, 1.0 - 2.0 ** -20, order=5)
    assert np.all(np.abs(at20) <= sup + 1e-9)


def test_phi_unbounded_with_negative_power():
    prof = DistortionProfile(n=2, terms=((2, 1.0), (-1, 0.7)), T0=0.0)
    vals = [phi_series(prof, 1.0 - 2.0 ** -i, order=3)[1][3] for i in range(4, 14)]
    assert vals[-1] < vals[0] - 10.0      # drifts to −∞


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("k0", [1, 2])
def test_psi_h_classification(n, k0):
    assert psi_h_probe(n, k0, 0).diverges
    assert psi_h_probe(n, k0, 1).classification == TailBehavior.BOUNDED
    assert psi_h_probe(n, k0, 2).classification == TailBehavior.BOUNDED


def test_psi_h_divergence_sign_follows_dimension_parity():
    assert psi_h_probe(2, 1, 0).classification == TailBehavior.DIVERGES
    assert psi_h_probe(1, 1, 0).classification == TailBehavior.DIVERGES_UP


def test_fiber_series_rational_case():
    prof = DistortionProfile(n=2, terms=((2, 1.0),), T0=0.0)
    t = 0.8
    rho = 1 - t
    assert fiber_series(prof, t) == pytest.approx((t + t * t) / rho ** 3, rel=1e-12)


def test_logterm_simanca_profile():
    fit = logterm_fit(DistortionProfile(n=2, terms=((2, 1.0),), T0=0.0))
    assert abs(fit.b_estimate) <= 1e-6
    assert fit.residual < 1e-9


def test_logterm_negative_power():
    fit = logterm_fit(DistortionProfile(n=2, terms=((2, 1.0), (-1, 1.0)), T0=0.0))
    assert fit.b_estimate == pytest.approx(-1.0, abs=1e-3)


def test_logterm_fs_profile():
    fit = logterm_fit(DistortionProfile(n=1, terms=((1, 1.0), (0, 1.0)), T0=1.0))
    assert abs(fit.b_estimate) <= 1e-6


def test_logterm_window_stability():
    prof = DistortionProfile(n=2, terms=((2, 1.0), (-1, 1.0)), T0=0.0)
    b1 = logterm_fit(prof, num=96).b_estimate
    b2 = logterm_fit(prof, num=192).b_estimate
    assert abs(b1 - b2) <= 0.2 * abs(b1)
