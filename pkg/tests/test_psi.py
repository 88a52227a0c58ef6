import math

import numpy as np
import pytest

from tyczlab.errors import DegenerateProfile, OutOfInterval
from tyczlab.potentials import FamilyId, FamilyParams, family_potential
from tyczlab.psi import (
    PsiProfile,
    classify_psi,
    integrate_family,
    log_coords,
    ode_residual,
    profile_of_family,
    t_interval,
    y_limit_points,
)


def test_log_coords_flat():
    t, y, psi = log_coords(family_potential("flat"), 2.0)
    assert (t, y, psi) == pytest.approx((math.log(2.0), 2.0, 2.0))


def test_log_coords_simanca():
    pot = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
    t, y, psi = log_coords(pot, 1.0)
    assert (t, y, psi) == pytest.approx((0.0, 2.0, 1.0))


def test_log_coords_hyperbolic_identity():
    pot = family_potential("hyperbolic", FamilyParams(mu=3.0), n=1)
    _, y, psi = log_coords(pot, 0.5)
    assert y == pytest.approx(3.0)
    assert psi == pytest.approx(y * (3.0 + y) / 3.0)


def test_classify_simanca():
    fid, params = classify_psi(PsiProfile(A=0.0, B=-1.0))
    assert fid == FamilyId.SIMANCA
    assert params.lam == pytest.approx(1.0)


def test_classify_fubini_study():
    fid, params = classify_psi(PsiProfile(A=-1.0 / 3.0, B=0.0))
    assert fid == FamilyId.FUBINI_STUDY
    assert params.mu == pytest.approx(3.0)


def test_classify_an0v_expanded_profile():
    # (1/μ)(y − μλ/2)(y + μλ/2 + μ) with μ=2, λ=1 expands to y²/2 + y − 3/2
    fid, params = classify_psi(PsiProfile(A=0.5, B=-1.5))
    assert fid == FamilyId.CASE7
    assert params.lam == pytest.approx(1.0)
    assert params.mu == pytest.approx(2.0)
    assert params.xi is None  # free integration constant


def test_classify_construct_identity(family_case):
    name, params = family_case
    prof = profile_of_family(name, params)
    fid, rec = classify_psi(prof)
    assert fid.value == name
    for field in ("lam", "mu", "zeta"):
        a, b = getattr(params, field), getattr(rec, field)
        if b is not None and a is not None:
            assert b == pytest.approx(a, rel=1e-12)


def test_classify_boundary_cases():
    assert classify_psi(PsiProfile(A=0.0, B=0.0))[0] == FamilyId.FLAT
    assert classify_psi(PsiProfile(A=0.0, B=2.0))[0] == FamilyId.A03
    assert classify_psi(PsiProfile(A=0.25, B=1.0))[0] == FamilyId.CASE10A  # double root
    assert classify_psi(PsiProfile(A=0.5, B=0.0))[0] == FamilyId.HYPERBOLIC
    assert classify_psi(PsiProfile(A=0.5, B=0.4))[0] == FamilyId.CASE6
    assert classify_psi(PsiProfile(A=0.5, B=10.0))[0] == FamilyId.CASE11A
    assert classify_psi(PsiProfile(A=-0.5, B=-0.1))[0] == FamilyId.CASE9
    assert classify_psi(PsiProfile(A=-0.5, B=0.3))[0] == FamilyId.CASE8


def test_classify_degenerate():
    with pytest.raises(DegenerateProfile):
        classify_psi(PsiProfile(A=float("nan"), B=0.0))
    with pytest.raises(DegenerateProfile):
        classify_psi(PsiProfile(A=-1.0, B=-1.0))  # ψ < 0 everywhere


def test_integrate_family_values():
    assert integrate_family("hyperbolic", FamilyParams(mu=2.0), math.log(0.5)) \
        == pytest.approx(2.0)
    assert integrate_family("flat", None, 0.0) == pytest.approx(1.0)
    assert integrate_family("case10a", FamilyParams(mu=2.0, kappa=1.0), 0.0) \
        == pytest.approx(1.0)


def test_integrate_family_interval_errors():
    with pytest.raises(OutOfInterval):
        integrate_family("hyperbolic", FamilyParams(mu=2.0), 0.5)
    with pytest.raises(OutOfInterval):
        integrate_family("case10a", FamilyParams(mu=2.0, kappa=0.0), -2.5)


def test_ode_consistency(family_case):
    name, params = family_case
    lo, hi = t_interval(name, params)
    lo, hi = max(lo, -4.0), min(hi, 4.0)
    ts = np.linspace(lo + 0.08 * (hi - lo), hi - 0.08 * (hi - lo), 20)
    assert ode_residual(name, params, ts) <= 1e-9


def test_csck_scalar_values():
    assert profile_of_family("fubini_study", FamilyParams(mu=2.0)).csck_scalar() \
        == pytest.approx(3.0)
    assert profile_of_family("hyperbolic", FamilyParams(mu=2.0)).csck_scalar() \
        == pytest.approx(-3.0)


def test_a3_zero_flag():
    assert PsiProfile(A=1.0, B=0.5).a3_zero
    assert not PsiProfile(A=1.0, B=0.5, C=0.2).a3_zero


def test_profile_json_round_trip():
    prof = PsiProfile(A=0.5, B=-1.5, C=0.0, n=2)
    assert PsiProfile.from_json(prof.to_json()) == prof


def test_y_limit_points():
    lo, hi = y_limit_points("an0v", FamilyParams(lam=1.0, mu=1.0))
    assert lo == pytest.approx(0.5)
    assert math.isinf(hi)
    k, l = y_limit_points("an0vii", FamilyParams(zeta=1.0 / 3.0, mu=3.0))
    assert (k, l) == pytest.approx((1.0, 2.0))
