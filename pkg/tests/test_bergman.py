import math

import numpy as np
import pytest
from scipy.special import beta as beta_fn

from tyczlab.bergman import (
    closed_distortion,
    distortion,
    distortion_series,
    fit_poly_in_m,
    monomial_norm,
    norm_an0v_closed,
    t0_flag,
    volume,
)
from tyczlab.errors import EmptySpace, IllConditioned, ParamOutOfRange
from tyczlab.potentials import (
    Divergence,
    FamilyParams,
    family_potential,
    pdomain_c,
    pdomain_potential,
)

SIM = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
AN0V = family_potential("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))


def test_flat_norm_gamma_oracle():
    # ∫₀^∞ e^{-r} r² dr = 2!
    nm = monomial_norm(family_potential("flat", n=1), 1, 2)
    assert nm.value == pytest.approx(2.0, rel=1e-10)


def test_simanca_norm_value():
    nm = monomial_norm(SIM, 2, (1, 1))
    assert nm.value == pytest.approx(0.125, rel=1e-10)
    closed = monomial_norm(SIM, 2, (1, 1), method="closed")
    assert closed.method == "gamma_closed_form"
    assert closed.value == pytest.approx(0.125, rel=1e-13)


def test_simanca_divergent_low_degree():
    nm = monomial_norm(SIM, 2, (0, 1))
    assert nm.is_divergent
    assert nm.divergent.endpoint == "r->0"


def test_an0v_closed_norm_value():
    # exact elementary integral: N(4,0) = (72/5)·∫₀¹ r²(2+4r³)(1−r³) dr = 8
    val = norm_an0v_closed(FamilyParams(lam=2.0, mu=4.0, xi=1.0), (4, 0))
    assert val == pytest.approx(8.0, rel=1e-12)


def test_an0v_closed_divergences():
    assert isinstance(norm_an0v_closed(FamilyParams(lam=2.0, mu=4.0, xi=1.0), (0, 0)),
                      Divergence)
    cert = norm_an0v_closed(FamilyParams(lam=2.0, mu=2.0, xi=1.0), (5, 4))
    assert isinstance(cert, Divergence) and cert.endpoint == "boundary"


def test_an0v_degree3_finite():
    # degree 3 > μλ/2 − (λ+1) = 1
    assert not monomial_norm(AN0V, 1, (2, 1)).is_divergent
    assert math.isfinite(norm_an0v_closed(AN0V.params, (0, 3)))


def test_quadrature_matches_closed_forms_deg12(family_case):
    name, params = family_case
    if name not in ("flat", "simanca", "hyperbolic", "fubini_study"):
        pytest.skip("no closed norm form")
    pot = family_potential(name, params)
    m = 2 if name != "hyperbolic" else 3
    for d in range(13):
        q = monomial_norm(pot, m, (d, 0), method="quadrature")
        if q.is_divergent:
            continue
        c = monomial_norm(pot, m, (d, 0), method="closed")
        assert q.value == pytest.approx(c.value, rel=1e-8)


def test_an0v_quadrature_matches_beta_closed():
    for d in range(2, 11):
        for j in range(d + 1):
            q = monomial_norm(AN0V, 1, (j, d - j)).value
            c = norm_an0v_closed(AN0V.params, (j, d - j))
            assert q == pytest.approx(c, rel=1e-8)


def test_norm_symmetry():
    a = monomial_norm(SIM, 3, (4, 1)).value
    b = monomial_norm(SIM, 3, (1, 4)).value
    assert a == pytest.approx(b, rel=1e-12)


def test_m_must_be_positive_integer():
    with pytest.raises(ParamOutOfRange):
        distortion(SIM, 0, 1.0)
    with pytest.raises(ParamOutOfRange):
        distortion(SIM, 2.5, 1.0)


def test_simanca_distortion_is_m_squared():
    assert distortion(SIM, 3, 1.0) == pytest.approx(9.0, rel=1e-9)
    for r in (0.1, 10.0):
        assert distortion(SIM, 15, r) == pytest.approx(225.0, rel=1e-9)


def test_hyperbolic_distortion():
    pot = family_potential("hyperbolic", FamilyParams(mu=2.0), n=1)
    assert distortion(pot, 3, 0.4) == pytest.approx(2.5, rel=1e-10)
    assert closed_distortion("hyperbolic", FamilyParams(mu=2.0), 3, n=1) == 2.5


def test_fs_distortion():
    pot = family_potential("fubini_study", FamilyParams(mu=2.0), n=1)
    assert distortion(pot, 3, 0.7) == pytest.approx(3.5, rel=1e-10)


def test_pdomain_distortion_closed_form():
    # independent oracle: N = p·B(k+1, m−2)·B(j+1, p(k+m)−1) summed exactly
    # collapses to T = (m−2)(m−1+c); spot-check the norms against that Beta
    # formula and the distortion against the closed T
    pd = pdomain_potential(2.0)
    for (j, k, m) in [(0, 0, 3), (2, 1, 4), (1, 3, 5)]:
        ref = 2.0 * beta_fn(k + 1, m - 2) * beta_fn(j + 1, 2.0 * (k + m) - 1)
        assert monomial_norm(pd, m, (j, k)).value == pytest.approx(ref, rel=1e-10)
    for m in (3, 5, 8):
        for (x1, v) in [(0.0, 0.0), (0.3, 0.2), (0.5, 0.4)]:
            x2 = v * 0.49 if x1 == 0.3 else v * (1 - x1) ** 2
            c = pdomain_c(2.0, x1, x2)
            T = distortion(pd, m, (x1, x2), tol=1e-11)
            assert T == pytest.approx((m - 2.0) * (m - 1.0 + c), rel=1e-7)


def test_pdomain_empty_space_below_m3():
    pd = pdomain_potential(2.0)
    for m in (1, 2):
        with pytest.raises(EmptySpace):
            distortion(pd, m, (0.0, 0.0))


def test_gauge_invariance():
    shifted = SIM.shifted(0.7)
    n0 = monomial_norm(SIM, 2, (1, 1)).value
    n1 = monomial_norm(shifted, 2, (1, 1)).value
    assert n1 == pytest.approx(n0 * math.exp(-2 * 0.7), rel=1e-10)
    assert distortion(shifted, 3, 1.0) == pytest.approx(distortion(SIM, 3, 1.0), rel=1e-9)


def test_balanced_families_point_independent():
    cases = [
        (family_potential("flat"), 2, (0.5, 1.0, 2.0, 5.0, 9.0)),
        (SIM, 2, (0.5, 1.0, 2.0, 5.0, 9.0)),
        (family_potential("hyperbolic", FamilyParams(mu=2.0), n=1), 1,
         (0.1, 0.3, 0.5, 0.7, 0.9)),
        (family_potential("fubini_study", FamilyParams(mu=2.0), n=1), 1,
         (0.1, 0.5, 1.0, 3.0, 8.0)),
    ]
    for pot, m, grid in cases:
        vals = [distortion(pot, m, r) for r in grid]
        assert (max(vals) - min(vals)) / max(vals) < 1e-7


def test_monotone_truncation():
    # partial sums are nondecreasing in the degree cutoff: all summands > 0,
    # so a larger tolerance (earlier cutoff) can only undershoot
    loose = distortion(SIM, 4, 2.0, tol=1e-4)
    tight = distortion(SIM, 4, 2.0, tol=1e-12)
    assert loose <= tight * (1 + 1e-12)


def test_volume_and_t0():
    fs1 = family_potential("fubini_study", FamilyParams(mu=2.0), n=1)
    assert volume(fs1) == pytest.approx(2.0, rel=1e-12)
    assert t0_flag(fs1) == pytest.approx(0.5, rel=1e-12)
    assert math.isinf(volume(family_potential("hyperbolic", FamilyParams(mu=2.0), n=1)))
    assert t0_flag(family_potential("flat")) == 0.0
    # FS n=2: volume μ²/2 matches the m → 0 value of (mμ+1)(mμ+2)/μ²
    fs2 = family_potential("fubini_study", FamilyParams(mu=3.0))
    assert volume(fs2) == pytest.approx(4.5, rel=1e-12)
    assert t0_flag(fs2) == pytest.approx(2.0 / 9.0, rel=1e-12)


def test_fit_simanca_grid():
    ser = distortion_series(SIM, range(1, 13), 1.0)
    fit = fit_poly_in_m(ser, (2, 1, 0))
    assert fit.coefficient(2) == pytest.approx(1.0, abs=1e-8)
    assert abs(fit.coefficient(1)) < 1e-8
    assert abs(fit.coefficient(0)) < 1e-8
    assert fit.residual < 1e-8


def test_fit_negative_powers_vanish():
    ser = distortion_series(SIM, range(1, 13), 1.0)
    fit = fit_poly_in_m(ser, (2, 1, 0, -1, -2))
    assert abs(fit.coefficient(-1)) <= 1e-8
    assert abs(fit.coefficient(-2)) <= 1e-8
    assert fit.finite_expansion


def test_fit_hyperbolic_coefficients():
    pot = family_potential("hyperbolic", FamilyParams(mu=4.0), n=1)
    fit = fit_poly_in_m(distortion_series(pot, range(1, 11), 0.3), (1, 0))
    assert fit.coefficient(1) == pytest.approx(1.0, abs=1e-9)
    assert fit.coefficient(0) == pytest.approx(-0.25, abs=1e-9)


def test_fit_requires_enough_points():
    ser = distortion_series(SIM, range(1, 5), 1.0)
    with pytest.raises(ParamOutOfRange):
        fit_poly_in_m(ser, (2, 1, 0))


def test_fit_ill_conditioned():
    ser = distortion_series(SIM, range(1, 13), 1.0)
    with pytest.raises(IllConditioned):
        fit_poly_in_m(ser, (9, 8, 7, 6, 5, 4, 3, 2, 1, 0), cond_limit=1e6)


def test_series_diagnostics():
    ser = distortion_series(SIM, (2, 3), 1.0, tol=1e-11)
    assert ser.tail_bound <= 1e-9
    assert ser.truncation_degree >= 3
    d = ser.to_json()
    assert d["m_grid"] == [2, 3]
