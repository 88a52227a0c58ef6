#!/usr/bin/env python3
"""Balanced metrics: when is the kernel sum a constant multiple of e^Φ?

A metric is balanced at level m when Σ x₁ʲx₂ᵏ/‖z₁ʲz₂ᵏ‖² = C·e^Φ.  On a
Reinhardt domain both sides are monomial series, so the check is a
degree-by-degree coefficient comparison.  The flat, blow-up scalar-flat,
hyperbolic and Fubini-Study metrics pass; the case7 metric with λ=2, μ=4
fails in a certified way: its potential e^Φ̂ = r⁴/(1−ξr³)⁴ only contains
degrees 4, 7, 10, ..., yet degrees 2 and 3 have perfectly finite norms — a
monomial the kernel sum must carry and e^Φ̂ cannot.
"""

from tyczlab import FamilyParams, balanced_check, distortion, family_potential


def main():
    cases = [
        ("flat (n=1)", family_potential("flat", n=1)),
        ("blow-up scalar-flat", family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))),
        ("hyperbolic μ=2 (n=1)", family_potential("hyperbolic", FamilyParams(mu=2.0), n=1)),
        ("fubini-study μ=3 (n=1)", family_potential("fs", FamilyParams(mu=3.0), n=1)),
        ("case7 λ=2, μ=4, ξ=1/2", family_potential("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))),
    ]
    for name, pot in cases:
        v = balanced_check(pot, m=1, max_degree=14)
        if v.balanced:
            print(f"{name:24s} balanced, C = {v.constant:.12f}")
        else:
            print(f"{name:24s} NOT balanced: {v.reason}")
            if v.missing_degrees:
                print(f"{'':24s} missing degrees: {list(v.missing_degrees)}")

    print()
    print("balanced  <=>  the distortion function is point-independent:")
    pot = family_potential("hyperbolic", FamilyParams(mu=2.0), n=1)
    vals = [distortion(pot, 1, r) for r in (0.1, 0.4, 0.7, 0.9)]
    print("   hyperbolic T_1 over four points:", " ".join(f"{v:.12f}" for v in vals))
    an0v = family_potential("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))
    vals = [distortion(an0v, 1, r) for r in (0.2, 0.5, 0.8, 1.1)]
    print("   case7      T_1 over four points:", " ".join(f"{v:.6f}" for v in vals))


if __name__ == "__main__":
    main()
