import math

import numpy as np
import pytest

from tyczlab.errors import OrderTooLarge, OutOfDomain, ParamOutOfRange, UnknownFamily
from tyczlab.potentials import (
    FamilyId,
    FamilyParams,
    RadialPotential,
    ReinhardtPotential,
    _REGISTRY,
    family_id,
    family_potential,
    jet_radial,
    pdomain_potential,
)

from conftest import CATALOG_PARAMS


def test_jet_radial_simanca():
    pot = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
    j = jet_radial(pot, 1.0, 2)
    assert np.allclose(j.coef, [1.0, 2.0, -0.5])


def test_jet_radial_flat():
    j = jet_radial(family_potential("flat"), 3.0, 3)
    assert np.allclose(j.coef, [3.0, 1.0, 0.0, 0.0])


def test_an0v_value_matches_potential_formula():
    pot = family_potential("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))
    j = jet_radial(pot, 1.0, 0)
    assert j.coef[0] == pytest.approx(4.0 * math.log(2.0), rel=1e-14)
    assert pot.domain == pytest.approx((0.0, 2.0 ** (1.0 / 3.0)))


def test_pdomain_values():
    pot = pdomain_potential(1.0)
    assert pot.phi(0.2, 0.3) == pytest.approx(-math.log(0.5))
    pot2 = pdomain_potential(2.0)
    assert pot2.phi(0.0, 0.0) == 0.0
    assert pot2.phi(0.5, 0.1) == pytest.approx(-math.log(0.15))
    with pytest.raises(ParamOutOfRange):
        pdomain_potential(-1.0)
    with pytest.raises(OutOfDomain):
        pot2.jet2((0.5, 0.3), (2, 2))


def test_family_aliases_and_unknown():
    assert family_id("an0v") == FamilyId.CASE7
    assert family_id("AN0FS") == FamilyId.FUBINI_STUDY
    assert family_id("hyp") == FamilyId.HYPERBOLIC
    with pytest.raises(UnknownFamily):
        family_id("frobenius")


def test_param_range_checks():
    with pytest.raises(ParamOutOfRange):
        family_potential("simanca", FamilyParams(lam=-1.0))
    with pytest.raises(ParamOutOfRange):
        family_potential("case9", FamilyParams(zeta=1.5, mu=1.0))
    with pytest.raises(ParamOutOfRange):
        family_potential("an0v", FamilyParams())  # λ required


def test_out_of_domain_and_order_cap():
    pot = family_potential("hyperbolic", FamilyParams(mu=2.0))
    with pytest.raises(OutOfDomain):
        pot.jet(1.5, 4)
    with pytest.raises(OrderTooLarge):
        pot.jet(0.5, pot.order_cap + 1)


def test_positivity_all_families(family_case):
    name, params = family_case
    pot = family_potential(name, params)
    for r in pot.interior_grid(10):
        assert pot.fprime(r) > 0
        assert pot.rfp_prime(r) > 0


def test_exp_jet_roundtrip_all_families(family_case):
    # jet of e^f from exp(jet of f) vs jet of the exp-composed tree
    from tyczlab import trees

    name, params = family_case
    pot = family_potential(name, params)
    etree = trees.exp(pot.tree)
    for r in pot.interior_grid(10):
        a = pot.jet(r, 8).exp()
        b = trees.eval_jet1(etree, r, 8)
        scale = np.max(np.abs(b.coef))
        assert np.max(np.abs(a.coef - b.coef)) <= 1e-11 * scale


def test_scaled_jet_consistency():
    pot = family_potential("simanca", FamilyParams(lam=2.0))
    r0 = 0.37
    plain = pot.jet(r0, 6)
    scaled = pot.jet(r0, 6, scaled=True)
    assert np.allclose(scaled.coef, plain.coef * r0 ** np.arange(7), rtol=1e-12)


@pytest.mark.parametrize("name", ["a03", "case11a", "case6", "case8", "case10a"])
def test_y_vanishes_at_stated_boundary(name):
    params = CATALOG_PARAMS[name]
    fam = _REGISTRY[family_id(name)]
    p = family_potential(name, params).params
    lo, hi = fam.t_interval(p)
    # boundary where F' -> 0 is the lower end for these families
    t_ref = lo + 1.0 if math.isfinite(lo) else -1.0
    ys = [abs(fam.y_of_t(p, lo + (t_ref - lo) * 2.0 ** -i)) for i in range(8, 28)]
    assert min(ys) < 1e-6


def test_json_round_trip_family():
    pot = family_potential("case6", FamilyParams(zeta=0.4, mu=1.5, xi=0.7))
    back = RadialPotential.from_json(pot.to_json())
    assert back.family == pot.family
    assert back.params == pot.params
    assert back.f(back.interior_grid(3)[1]) == pot.f(pot.interior_grid(3)[1])


def test_json_round_trip_custom_tree():
    from tyczlab import trees

    tree = trees.add(trees.mul(trees.const(2.0), trees.var(0)),
                     trees.log(trees.add(trees.const(1.0), trees.var(0))))
    pot = RadialPotential(tree=tree, domain=(0.0, math.inf), n=2, label="custom")
    back = RadialPotential.from_json(pot.to_json())
    assert back.f(1.7) == pytest.approx(pot.f(1.7))
    assert back.fprime(1.7) == pytest.approx(2.0 + 1.0 / 2.7)


def test_json_round_trip_reinhardt():
    pot = pdomain_potential(2.5)
    back = ReinhardtPotential.from_json(pot.to_json())
    assert back.p == 2.5
    assert back.phi(0.3, 0.05) == pytest.approx(pot.phi(0.3, 0.05))


def test_gauge_shift_changes_f_only():
    pot = family_potential("flat")
    shifted = pot.shifted(2.5)
    assert shifted.f(1.0) == pytest.approx(pot.f(1.0) + 2.5)
    assert shifted.fprime(1.0) == pot.fprime(1.0)
