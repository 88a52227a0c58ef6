import math

import numpy as np
import pytest

from tyczlab.errors import NotPositiveDefinite, OutOfDomain
from tyczlab.geometry import (
    curvature_report,
    det_g_radial,
    einstein_defect,
    metric_matrix,
)
from tyczlab.potentials import FamilyParams, family_potential, pdomain_c, pdomain_potential
from tyczlab.psi import profile_of_family


def test_metric_flat_identity():
    g = metric_matrix(family_potential("flat"), 2.5)
    assert np.allclose(g, np.eye(2))


def test_metric_simanca_example():
    pot = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
    g = metric_matrix(pot, 1.0)
    assert np.allclose(g, np.diag([1.0, 2.0]))


def test_metric_pdomain_origin():
    assert np.allclose(metric_matrix(pdomain_potential(1.0), (0.0, 0.0)), np.eye(2))
    g = metric_matrix(pdomain_potential(2.0), (0.0, 0.0))
    assert np.allclose(g, np.diag([2.0, 1.0]))


def test_metric_positive_definite_guard():
    # a tree that is not plurisubharmonic near 0: f = -r
    from tyczlab import trees
    from tyczlab.potentials import RadialPotential

    bad = RadialPotential(tree=trees.neg(trees.var(0)), domain=(0.0, math.inf))
    with pytest.raises(NotPositiveDefinite):
        metric_matrix(bad, 1.0)


def test_det_g_radial_values():
    sim = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
    assert det_g_radial(sim, 2.0) == pytest.approx(1.5)
    assert det_g_radial(family_potential("flat"), 5.0) == pytest.approx(1.0)
    an0v = family_potential("an0v", FamilyParams(lam=1.0, mu=2.0, xi=0.5))
    assert det_g_radial(an0v, 1.0) == pytest.approx(80.0)
    with pytest.raises(OutOfDomain):
        det_g_radial(family_potential("hyperbolic"), 1.5)


def test_det_consistency_with_metric_matrix(family_case):
    name, params = family_case
    pot = family_potential(name, params)
    for r in pot.interior_grid(5):
        g = metric_matrix(pot, r)
        assert np.linalg.det(g) == pytest.approx(det_g_radial(pot, r), rel=1e-10)


def test_hyperbolic_n1_scal_and_a2():
    for mu in (1.0, 2.0, 3.5):
        rep = curvature_report(family_potential("hyperbolic", FamilyParams(mu=mu), n=1), 0.4)
        assert rep.scal == pytest.approx(-2.0 / mu, rel=1e-11)
        assert rep.a1 == pytest.approx(-1.0 / mu, rel=1e-11)
        assert abs(rep.a2) < 1e-12


def test_fs_n2_scal_and_a2():
    # T_m = (mμ+1)(mμ+2)/μ² gives a₁ = 3/μ, a₂ = 2/μ²
    for mu in (1.0, 3.0):
        rep = curvature_report(family_potential("fubini_study", FamilyParams(mu=mu)), 0.7)
        assert rep.scal == pytest.approx(6.0 / mu, rel=1e-11)
        assert rep.a2 == pytest.approx(2.0 / mu ** 2, rel=1e-10)
        assert abs(rep.lap_scal) < 1e-10


def test_csck_constancy(family_case):
    name, params = family_case
    pot = family_potential(name, params)
    ref = profile_of_family(name, params).csck_scalar()
    vals = np.array([curvature_report(pot, r).scal for r in pot.interior_grid(10)])
    assert np.max(np.abs(vals - np.mean(vals))) <= max(1e-8 * abs(ref), 1e-10)
    assert np.mean(vals) == pytest.approx(ref, abs=max(1e-9, 1e-9 * abs(ref)))


# p-domain curvature: scal = 2(c−3) everywhere (exact, verified symbolically);
# a₂ = 2−2c by two independent routes (closed-form Bergman norms and the
# curvature-coefficient formula this module implements).  At the origin a₂ = 2/p.
@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.0])
def test_pdomain_scal_matches_c_formula(p):
    pot = pdomain_potential(p)
    for (x1, v) in [(0.0, 0.0), (0.3, 0.2), (0.5, 0.4), (0.1, 0.6)]:
        x2 = v * (1.0 - x1) ** p
        c = pdomain_c(p, x1, x2)
        rep = curvature_report(pot, (x1, x2))
        assert rep.scal == pytest.approx(2.0 * (c - 3.0), rel=1e-10)
        assert rep.a2 == pytest.approx(2.0 - 2.0 * c, rel=1e-9)


def test_pdomain_origin_invariants():
    # hand-derived values: scal(0) = −4−2/p, Δscal(0) = −2c(0) = −2(1−1/p),
    # |Ric|²(0) = 10+4/p+4/p², |R|²(0) = 8+4/p²
    for p in (0.5, 2.0, 3.0):
        rep = curvature_report(pdomain_potential(p), (0.0, 0.0))
        assert rep.scal == pytest.approx(-4.0 - 2.0 / p, rel=1e-12)
        assert rep.lap_scal == pytest.approx(-2.0 * (1.0 - 1.0 / p), rel=1e-10)
        assert rep.ric_norm2 == pytest.approx(10.0 + 4.0 / p + 4.0 / p ** 2, rel=1e-11)
        assert rep.riem_norm2 == pytest.approx(8.0 + 4.0 / p ** 2, rel=1e-11)
        assert rep.a2 == pytest.approx(2.0 / p, rel=1e-10)


def test_an0v_not_einstein():
    # the case7 metric is never Einstein: G⁻¹Ric has split eigenvalues (the
    # a₂ combination happens to be constant anyway, so the defect — not
    # a₂-variation — is the computable witness that Ric ≠ c·ω)
    pot = family_potential("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))
    assert einstein_defect(pot, 0.8) > 1e-2
    # while space forms are Einstein
    assert einstein_defect(family_potential("fubini_study", FamilyParams(mu=2.0)), 0.5) < 1e-10
    # |Ric|² genuinely varies across points even though a₂ does not
    reps = [curvature_report(pot, r) for r in (0.3, 0.6, 0.9)]
    ric = [r.ric_norm2 for r in reps]
    assert max(ric) - min(ric) > 1e-2
    a2s = [r.a2 for r in reps]
    assert max(a2s) - min(a2s) < 1e-8


def test_report_json():
    rep = curvature_report(pdomain_potential(2.0), (0.0, 0.0))
    d = rep.to_json()
    assert d["a1"] == pytest.approx(rep.scal / 2.0)
    assert set(d) >= {"scal", "ric_norm2", "riem_norm2", "lap_scal", "a1", "a2"}
