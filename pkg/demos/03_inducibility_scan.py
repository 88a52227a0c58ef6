#!/usr/bin/env python3
"""Projective inducibility: derivative-sign scans and root tests.

A radial metric that embeds isometrically into projective space must have
every derivative dʰ(e^f)/drʰ ≥ 0 on its domain.  High-order jets of e^f
make this an effective obstruction: the two-positive-root family (case9)
fails at order k+2 where k is its smaller root, and the case7 family with
non-integer λ fails at order μλ/2 + ⌊λ⌋ + 3.  The profile's root pattern
gives a scan-free criterion too: a positive non-integer root of ψ that is a
limit value of F' already rules the embedding out.
"""

from tyczlab import (
    FamilyParams,
    derivative_sign_scan,
    family_potential,
    integer_root_test,
    known_inducible,
    profile_of_family,
    y_limit_points,
)

SCAN_CASES = [
    ("case9 (an0vii) ζ=1/3, μ=3", "an0vii", FamilyParams(zeta=1.0 / 3.0, mu=3.0)),
    ("case7 (an0v) λ=1.5, μ=4", "an0v", FamilyParams(lam=1.5, mu=4.0, xi=0.5)),
    ("fubini-study μ=2.5", "fs", FamilyParams(mu=2.5)),
    ("blow-up scalar-flat λ=1", "simanca", FamilyParams(lam=1.0, mu=1.0)),
    ("case7 (an0v) λ=2, μ=4", "an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5)),
    ("hyperbolic μ=1.7", "hyperbolic", FamilyParams(mu=1.7)),
]


def main():
    for name, fam, params in SCAN_CASES:
        pot = family_potential(fam, params)
        v = derivative_sign_scan(pot, h_max=40)
        if v.obstructed:
            w = v.witness
            print(f"{name:28s} OBSTRUCTED: d^{w.h} e^f/dr^{w.h} < 0 at r = {w.r:.3g}")
        else:
            print(f"{name:28s} no obstruction up to h = {v.h_max} "
                  f"(catalog: inducible = {known_inducible(fam, pot.params)})")

    print()
    print("root tests (no scanning):")
    for fam, params in [("an0v", FamilyParams(lam=1.0, mu=1.0, xi=1.0)),
                        ("a03", FamilyParams(lam=1.0)),
                        ("simanca", FamilyParams(lam=2.0))]:
        res = integer_root_test(profile_of_family(fam, params),
                                y_limit_points(fam, params))
        print(f"   {fam:8s} {params.to_json()}: {res.verdict.value} — {res.reason}")


if __name__ == "__main__":
    main()
