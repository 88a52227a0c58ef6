import pytest

from tyczlab.potentials import FamilyParams

# one admissible parameter set per catalog family, reused across modules
CATALOG_PARAMS = {
    "flat": FamilyParams(),
    "simanca": FamilyParams(lam=1.3),
    "a03": FamilyParams(lam=0.8, mu=1.1),
    "fubini_study": FamilyParams(mu=2.3),
    "hyperbolic": FamilyParams(mu=1.7),
    "case11a": FamilyParams(lam=0.6, mu=1.2, kappa=0.3),
    "case6": FamilyParams(zeta=0.4, mu=1.5, xi=0.7),
    "case7": FamilyParams(lam=1.5, mu=4.0, xi=0.5),
    "case8": FamilyParams(lam=1.2, mu=2.0, xi=1.3),
    "case9": FamilyParams(zeta=1.0 / 3.0, mu=3.0),
    "case10a": FamilyParams(mu=2.0, kappa=0.5),
}


@pytest.fixture(params=sorted(CATALOG_PARAMS))
def family_case(request):
    return request.param, CATALOG_PARAMS[request.param]
