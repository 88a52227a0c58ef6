#!/usr/bin/env python3
"""The eleven-family catalog of radial constant-scalar-curvature metrics.

Writing y = F'(t), ψ(y) = F''(t) for F(t) = f(eᵗ), the cscK condition in
complex dimension 2 (with vanishing third expansion coefficient) reduces to
the quadratic profile ψ(y) = A y² + y + B with scal = −6A.  The root pattern
of ψ sorts every profile into one of eleven closed-form families.  This
script classifies profiles, verifies the ODE y' = ψ(y) against the closed
forms, and checks the scalar curvature from the curvature module.
"""

import numpy as np

from tyczlab import (
    FamilyParams,
    PsiProfile,
    classify_psi,
    curvature_report,
    family_potential,
    ode_residual,
    profile_of_family,
    t_interval,
)

EXAMPLES = [
    PsiProfile(A=0.0, B=0.0),      # flat
    PsiProfile(A=0.0, B=-1.0),     # blow-up scalar-flat, λ = 1
    PsiProfile(A=-1.0 / 3.0, B=0.0),   # Fubini-Study, μ = 3
    PsiProfile(A=0.5, B=-1.5),     # one positive and one negative root
    PsiProfile(A=0.5, B=10.0),     # no real roots
    PsiProfile(A=-0.5, B=-0.1),    # two positive roots
]

PARAMS = {
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


def main():
    print("classification by root pattern:")
    for prof in EXAMPLES:
        fid, params = classify_psi(prof)
        ptxt = ", ".join(f"{k}={v:.4g}" for k, v in params.to_json().items())
        print(f"   A={prof.A:+.4f}, B={prof.B:+.4f}  ->  {fid.value:13s} {ptxt}")

    print()
    print("family      scal(curvature)   -6A        ODE residual")
    for name, params in PARAMS.items():
        pot = family_potential(name, params)
        prof = profile_of_family(name, params)
        scal = np.mean([curvature_report(pot, r).scal for r in pot.interior_grid(4)])
        lo, hi = t_interval(name, params)
        lo, hi = max(lo, -3.0), min(hi, 3.0)
        ts = np.linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 12)
        resid = ode_residual(name, params, ts)
        print(f"{name:11s} {scal:+.12f}  {prof.csck_scalar():+.8f}  {resid:.2e}")


if __name__ == "__main__":
    main()
