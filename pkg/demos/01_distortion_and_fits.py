#!/usr/bin/env python3
"""Distortion functions T_m and their expansions in m.

For a radial Kähler potential the level-m weighted Bergman kernel restricted
to the diagonal, times e^{-mΦ}, is the distortion function T_m.  For the
model metrics it is exactly a polynomial in m:

    flat (C²)            T_m = m²
    blow-up scalar-flat  T_m = m²           (r + log r potential)
    hyperbolic disc, μ   T_m = m − 1/μ
    Fubini-Study, μ      T_m = m + 1/μ      (= h⁰(L^m)/V on CP¹)

This script computes each by quadrature norms, fits the polynomial, and
shows the negative powers vanish when they should.
"""

import numpy as np

from tyczlab import (
    FamilyParams,
    distortion_series,
    family_potential,
    fit_poly_in_m,
)

CASES = [
    ("flat (n=2)", family_potential("flat"), 1.7, (2, 1, 0)),
    ("simanca", family_potential("simanca", FamilyParams(lam=1.0, mu=1.0)), 1.0, (2, 1, 0)),
    ("hyperbolic mu=4 (n=1)",
     family_potential("hyperbolic", FamilyParams(mu=4.0), n=1), 0.3, (1, 0)),
    ("fubini-study mu=2 (n=1)",
     family_potential("fubini_study", FamilyParams(mu=2.0), n=1), 0.9, (1, 0)),
]


def main():
    for name, pot, r, basis in CASES:
        ser = distortion_series(pot, range(1, 11), r)
        fit = fit_poly_in_m(ser, basis)
        coefs = ", ".join(f"m^{b}: {c:+.10f}" for b, c in
                          zip(fit.basis, fit.coefficients))
        print(f"{name:26s} T_m at r={r}: " +
              " ".join(f"{v:.6f}" for v in ser.values[:5]) + " ...")
        print(f"{'':26s} fit -> {coefs}   (held-out residual {fit.residual:.1e})")

    print()
    print("negative powers of m are absent for the scalar-flat blow-up metric:")
    pot = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
    ser = distortion_series(pot, range(1, 13), 1.0)
    fit = fit_poly_in_m(ser, (2, 1, 0, -1, -2))
    for b, c in zip(fit.basis, fit.coefficients):
        print(f"   coefficient of m^{b:+d}: {c:+.3e}")
    print(f"   finite-expansion flag: {fit.finite_expansion}")


if __name__ == "__main__":
    main()
