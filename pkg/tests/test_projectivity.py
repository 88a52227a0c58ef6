import math
from fractions import Fraction

import numpy as np
import pytest

from tyczlab.errors import NotRepresentable, ParamOutOfRange
from tyczlab.potentials import FamilyParams, family_potential
from tyczlab.projectivity import (
    PSI_SYMBOLIC,
    PolyABy,
    balanced_check,
    derivative_identity_residual,
    derivative_sign_scan,
    falling_factorial_poly,
    inequality_system,
    integer_root_test,
    known_inducible,
    pk_recursion,
    recheck_witness,
    small_r_grid,
)
from tyczlab.psi import PsiProfile, profile_of_family, y_limit_points


def test_pk_base_cases():
    pks = pk_recursion(3)
    assert not pks[0].poly                      # P₁ = 0
    assert pks[1].poly == PolyABy.of(1)         # P₂ = 1
    p3 = PolyABy({(1, 0, 1): Fraction(2), (0, 0, 1): Fraction(3),
                  (0, 0, 0): Fraction(-2)})    # P₃ = ψ' + 3y − 3 = 2Ay + 3y − 2
    assert pks[2].poly == p3


def test_pk_third_inequality_symbolic():
    pks = pk_recursion(3)
    lhs = PSI_SYMBOLIC * pks[2].poly + falling_factorial_poly(3)
    p3 = PolyABy({(1, 0, 1): Fraction(2), (0, 0, 1): Fraction(3),
                  (0, 0, 0): Fraction(-2)})
    rhs = p3 * PSI_SYMBOLIC + PolyABy({(0, 0, 3): Fraction(1),
                                       (0, 0, 2): Fraction(-3),
                                       (0, 0, 1): Fraction(2)})
    assert lhs == rhs


def test_falling_factorial():
    ff = falling_factorial_poly(3)
    assert ff.evaluate(5.0, 0.0, 0.0) == pytest.approx(5 * 4 * 3)
    assert falling_factorial_poly(0) == PolyABy.of(1)


def test_derivative_identity_all_families(family_case):
    name, params = family_case
    if name == "flat":
        pytest.skip("ψ has no constant/quadratic part; covered by simanca")
    pot = family_potential(name, params)
    for r in pot.interior_grid(3):
        assert derivative_identity_residual(pot, r, k_max=10) <= 1e-9


def test_inequality_system_cases():
    assert inequality_system(0.0, 0.0, 1.0) == (True, True, True)
    ok1, ok2, ok3 = inequality_system(0.0, 1.0, 1e-6)
    assert (ok1, ok2) == (True, True) and not ok3
    assert inequality_system(-1.0 / 3.0, 0.0, 1.0) == (True, True, True)


def test_scan_clean_families():
    for fam, params in [("flat", FamilyParams()),
                        ("simanca", FamilyParams(lam=1.0, mu=1.0)),
                        ("simanca", FamilyParams(lam=2.0)),
                        ("fubini_study", FamilyParams(mu=2.0)),
                        ("hyperbolic", FamilyParams(mu=1.7)),
                        ("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))]:
        pot = family_potential(fam, params)
        assert not derivative_sign_scan(pot, h_max=40).obstructed, fam


def test_scan_an0vii_obstruction_order():
    pot = family_potential("an0vii", FamilyParams(zeta=1.0 / 3.0, mu=3.0))
    v = derivative_sign_scan(pot, h_max=40)
    assert v.obstructed
    assert v.witness.h == 3          # k + 2 with k = μ(1−ζ)/2 = 1
    ok, recomputed = recheck_witness(pot, v.witness)
    assert ok and recomputed < 0


def test_scan_an0v_noninteger_lambda():
    pot = family_potential("an0v", FamilyParams(lam=1.5, mu=4.0, xi=0.5))
    v = derivative_sign_scan(pot, h_max=40)
    assert v.obstructed
    assert v.witness.h == 7          # μλ/2 + ⌊λ⌋ + 3 = 3 + 1 + 3


def test_scan_fs_noninteger_mu():
    pot = family_potential("fubini_study", FamilyParams(mu=2.5))
    v = derivative_sign_scan(pot, h_max=40)
    assert v.obstructed and v.witness.h == 4    # ⌊μ⌋ + 2


def test_scan_h_max_guard():
    pot = family_potential("flat")
    with pytest.raises(ParamOutOfRange):
        derivative_sign_scan(pot, h_max=pot.order_cap + 1)


def test_scan_grid_default_geometric():
    pot = family_potential("hyperbolic", FamilyParams(mu=2.0))
    grid = small_r_grid(pot, 10)
    assert np.all(np.diff(grid) < 0) or np.all(np.diff(grid) > 0)
    ratios = grid[:-1] / grid[1:]
    assert np.allclose(ratios, 2.0)


def test_integer_root_test_cases():
    params = FamilyParams(lam=1.0, mu=1.0, xi=1.0)
    res = integer_root_test(profile_of_family("an0v", params),
                            y_limit_points("an0v", params))
    assert res.verdict.value == "not_induced"
    # integer root passes
    res = integer_root_test(PsiProfile(A=0.0, B=-2.0), (2.0, math.inf))
    assert res.verdict.value == "inconclusive"
    # 0 as a limit point with B ≠ 0
    res = integer_root_test(profile_of_family("a03", FamilyParams(lam=1.0)),
                            y_limit_points("a03", FamilyParams(lam=1.0)))
    assert res.verdict.value == "not_induced"


def test_known_inducible_catalog():
    assert known_inducible("flat", FamilyParams())
    assert known_inducible("hyperbolic", FamilyParams(mu=1.7))
    assert known_inducible("fubini_study", FamilyParams(mu=2.0))
    assert not known_inducible("fubini_study", FamilyParams(mu=2.5))
    assert known_inducible("an0v", FamilyParams(lam=2.0, mu=4.0))
    assert not known_inducible("an0v", FamilyParams(lam=1.5, mu=4.0))
    assert not known_inducible("an0vii", FamilyParams(zeta=1.0 / 3.0, mu=3.0))


def test_balanced_flat_and_simanca():
    v = balanced_check(family_potential("flat", n=1), 1, max_degree=14)
    assert v.balanced and v.constant == pytest.approx(1.0, rel=1e-9)
    v = balanced_check(family_potential("simanca", FamilyParams(lam=1.0, mu=1.0)),
                       1, max_degree=14)
    assert v.balanced and v.constant == pytest.approx(1.0, rel=1e-9)


def test_balanced_hyperbolic_constant():
    v = balanced_check(family_potential("hyperbolic", FamilyParams(mu=2.0), n=1),
                       1, max_degree=14)
    assert v.balanced and v.constant == pytest.approx(0.5, rel=1e-9)


def test_an0v_not_balanced_missing_degrees():
    pot = family_potential("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))
    v = balanced_check(pot, 1, max_degree=12)
    assert not v.balanced
    # e^Φ only has degrees μλ/2 + (λ+1)i = 4, 7, 10; every other degree ≥ 2
    # has a finite norm, so the first missing degree is 2 and the classical
    # witness μλ/2 − 1 = 3 is in the list
    assert v.missing_degrees[0] == 2
    assert 3 in v.missing_degrees


def test_balanced_not_representable():
    pot = family_potential("case9", FamilyParams(zeta=1.0 / 3.0, mu=3.0))
    with pytest.raises(NotRepresentable):
        balanced_check(pot, 1)


def test_balanced_implies_constant_distortion():
    from tyczlab.bergman import distortion

    pot = family_potential("hyperbolic", FamilyParams(mu=2.0), n=1)
    v = balanced_check(pot, 1, max_degree=12)
    assert v.balanced
    vals = [distortion(pot, 1, r) for r in (0.1, 0.35, 0.6, 0.8, 0.95)]
    assert (max(vals) - min(vals)) / max(vals) <= 1e-7


def test_verdict_json():
    pot = family_potential("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))
    v = derivative_sign_scan(pot, h_max=12)
    d = v.to_json()
    assert d["status"] == "no_obstruction_found"
    b = balanced_check(pot, 1, max_degree=10).to_json()
    assert b["status"] == "not_balanced"
