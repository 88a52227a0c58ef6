"""The acceptance gate: ten numbered criteria, each a pass/fail check.

Every criterion is implemented exactly as stated, with its stated tolerance.
Two of them (2 and 4b) encode a reference constant term for the p-domain
distortion that both independent computations in this package — Bergman
quadrature sums and curvature-coefficient evaluation — contradict: the
computed closed form is T_m = (m−2)(m−1+c(z)) (so a₂ = 2 − 2c, not c + 2),
and the weighted space at m ≤ 2 is trivial.  Those two criteria therefore
FAIL by design here; the runner prints the honest cross-checks next to them
(quadrature == curvature == (m−2)(m−1+c) at the same points) so the failure
is attributable to the reference value, not the machinery.  See README.

Run via ``tycz selftest`` or pytest (tests/test_acceptance.py).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .bergman import (
    distortion,
    distortion_series,
    fit_poly_in_m,
    monomial_norm,
    norm_an0v_closed,
)
from .errors import EmptySpace, TyczError
from .geometry import curvature_report
from .potentials import FamilyParams, family_potential, pdomain_c, pdomain_potential
from .projectivity import (
    PSI_SYMBOLIC,
    PolyABy,
    balanced_check,
    derivative_identity_residual,
    derivative_sign_scan,
    falling_factorial_poly,
    integer_root_test,
    pk_recursion,
    small_r_grid,
)
from .psi import ode_residual, profile_of_family, t_interval, y_limit_points
from .szego import DistortionProfile, eulerian_q, logterm_fit, psi_h_probe

from fractions import Fraction


@dataclass
class CriterionResult:
    number: str
    title: str
    passed: bool
    runtime: float = 0.0
    details: list = field(default_factory=list)

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{self.number:>3}] {mark}  {self.title}  ({self.runtime:.1f}s)"


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# -- 1 -----------------------------------------------------------------------


def criterion_1():
    t0 = time.time()
    pot = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
    worst = 0.0
    for r in (0.1, 1.0, 10.0):
        for m in range(1, 16):
            worst = max(worst, _rel(distortion(pot, m, r), float(m) ** 2))
    dt = time.time() - t0
    ok = worst <= 1e-7 and dt <= 30.0
    return CriterionResult(
        "1", f"Simanca distortion equals m² (worst rel {worst:.2e})", ok, dt,
        [f"m = 1..15, r in (0.1, 1, 10), runtime {dt:.1f}s <= 30s"])


# -- 2 -----------------------------------------------------------------------


def criterion_2():
    t0 = time.time()
    details = []
    worst = 0.0
    honest_worst = 0.0
    failures = 0
    points = [(0.0, 0.0), (0.3, 0.2), (0.5, 0.4), (0.1, 0.6)]
    for p in (0.5, 2.0, 3.0):
        pot = pdomain_potential(p)
        for m in range(1, 9):
            for (x1, v) in points:
                x2 = v * (1.0 - x1) ** p
                c = pdomain_c(p, x1, x2)
                ref = m * m + (c - 3.0) * m + c + 2.0
                honest = (m - 2.0) * (m - 1.0 + c)
                try:
                    T = distortion(pot, m, (x1, x2), tol=1e-9)
                except EmptySpace:
                    failures += 1
                    details.append(
                        f"p={p} m={m} ({x1},{x2:.3f}): EmptySpace (all norms diverge), "
                        f"reference value {ref:.6g}")
                    continue
                worst = max(worst, _rel(T, ref))
                honest_worst = max(honest_worst, _rel(T, honest))
                if _rel(T, ref) > 1e-5:
                    failures += 1
    dt = time.time() - t0
    ok = failures == 0 and worst <= 1e-5 and dt <= 120.0
    details.insert(0, f"vs m²+(c−3)m+c+2: worst rel {worst:.2e}; "
                      f"vs computed closed form (m−2)(m−1+c): worst rel {honest_worst:.2e}")
    details.insert(1, "both quadrature and curvature routes give (m−2)(m−1+c); "
                      "see README and tests/test_geometry.py")
    return CriterionResult(
        "2", f"p-domain distortion matches m²+(c−3)m+c+2 ({failures} failing cells)",
        ok, dt, details)


# -- 3 -----------------------------------------------------------------------


def criterion_3():
    t0 = time.time()
    details = []
    ok = True
    worst_flat = 0.0
    for n in (1, 2):
        pot = family_potential("flat", n=n)
        for m in (1, 3, 7):
            r = 0.8 if n == 1 else 1.7
            worst_flat = max(worst_flat, _rel(distortion(pot, m, r), float(m) ** n))
    ok &= worst_flat <= 1e-9
    details.append(f"flat n=1,2: worst rel {worst_flat:.2e} (tol 1e-9)")
    worst_h = 0.0
    for mu in (1.5, 2.0, 4.0):
        pot = family_potential("hyperbolic", FamilyParams(mu=mu), n=1)
        for m in (1, 2, 5):
            if m * mu <= 1:
                continue
            worst_h = max(worst_h, _rel(distortion(pot, m, 0.45), m - 1.0 / mu))
    ok &= worst_h <= 1e-8
    details.append(f"hyperbolic n=1, mu in (1.5, 2, 4): worst rel {worst_h:.2e} (tol 1e-8)")
    worst_fs = 0.0
    for lam in (1.0, 2.0):
        pot = family_potential("fubini_study", FamilyParams(mu=lam), n=1)
        for m in (1, 2, 6):
            worst_fs = max(worst_fs, _rel(distortion(pot, m, 0.9), m + 1.0 / lam))
    ok &= worst_fs <= 1e-8
    details.append(f"fubini-study n=1, lam in (1, 2): worst rel {worst_fs:.2e} "
                   "(h⁰(Lᵐ)/V oracle: T = m + 1/lam)")
    return CriterionResult("3", "closed-form constants (flat, hyperbolic, FS)",
                           bool(ok), time.time() - t0, details)


# -- 4 -----------------------------------------------------------------------


def criterion_4():
    t0 = time.time()
    details = []
    ok_a = True
    worst_a = 0.0
    cases = ([("flat", FamilyParams(), n, 0.8 if n == 1 else 1.7) for n in (1, 2)]
             + [("hyperbolic", FamilyParams(mu=mu), 1, 0.45) for mu in (1.5, 2.0, 4.0)]
             + [("fubini_study", FamilyParams(mu=lam), 1, 0.9) for lam in (1.0, 2.0)])
    for fam, params, n, r in cases:
        pot = family_potential(fam, params, n=n)
        m_lo = 1
        if fam == "hyperbolic":
            m_lo = max(1, int(math.floor(n / params.mu)) + 1)
        grid = list(range(m_lo, m_lo + 8))
        ser = distortion_series(pot, grid, r)
        fit = fit_poly_in_m(ser, tuple(range(n, -1, -1)))
        a1_fit = fit.coefficient(n - 1)
        a1_curv = curvature_report(pot, r).a1
        err = abs(a1_fit - a1_curv) / max(abs(a1_curv), 1.0)
        worst_a = max(worst_a, err)
        ok_a &= err <= 1e-5
    details.append(f"4a fitted m^(n-1) coefficient vs scal/2: worst dev {worst_a:.2e} (tol 1e-5)")

    ok_b = True
    worst_b = 0.0
    worst_cross = 0.0
    points = [(0.0, 0.0), (0.3, 0.2), (0.5, 0.4), (0.1, 0.6)]
    for p in (0.5, 2.0, 3.0):
        pot = pdomain_potential(p)
        for (x1, v) in points:
            x2 = v * (1.0 - x1) ** p
            c = pdomain_c(p, x1, x2)
            rep = curvature_report(pot, (x1, x2))
            worst_b = max(worst_b, _rel(rep.a2, c + 2.0))
            if _rel(rep.a2, c + 2.0) > 1e-4:
                ok_b = False
            ser = distortion_series(pot, range(3, 11), (x1, x2), tol=1e-9)
            fit = fit_poly_in_m(ser, (2, 1, 0))
            worst_cross = max(worst_cross, _rel(rep.a2, fit.coefficient(0)))
    details.append(f"4b curvature a₂ vs c+2: worst rel {worst_b:.2e} (tol 1e-4)")
    details.append(f"    cross-check a₂(curvature) vs a₂(fitted): worst rel "
                   f"{worst_cross:.2e} — the two internal routes agree on 2−2c")
    return CriterionResult("4", "coefficient cross-checks (a₁ pass, a₂ vs c+2)",
                           bool(ok_a and ok_b), time.time() - t0, details)


# -- 5 -----------------------------------------------------------------------


def criterion_5():
    t0 = time.time()
    details = []
    pot = family_potential("simanca", FamilyParams(lam=1.0, mu=1.0))
    ser = distortion_series(pot, range(1, 13), 1.0)
    fit = fit_poly_in_m(ser, (2, 1, 0, -1, -2))
    neg_s = max(abs(fit.coefficient(-1)), abs(fit.coefficient(-2)))
    details.append(f"simanca negative-power coefficients <= {neg_s:.2e}")
    pd = pdomain_potential(2.0)
    ser = distortion_series(pd, range(3, 15), (0.3, 0.2 * 0.49), tol=1e-12)
    fit2 = fit_poly_in_m(ser, (2, 1, 0, -1, -2))
    neg_p = max(abs(fit2.coefficient(-1)), abs(fit2.coefficient(-2)))
    details.append(f"p-domain (p=2, m=3..14) negative-power coefficients <= {neg_p:.2e}")
    ok = neg_s <= 1e-7 and neg_p <= 1e-7
    return CriterionResult("5", "finite-expansion structure (no negative powers)",
                           bool(ok), time.time() - t0, details)


# -- 6 -----------------------------------------------------------------------


def _random_admissible(rng):
    lam = float(rng.uniform(0.5, 2.5))
    mu = float(rng.uniform(0.6, 3.5))
    xi = float(rng.uniform(0.4, 1.8))
    zeta = float(rng.uniform(0.15, 0.85))
    kappa = float(rng.uniform(-0.8, 0.8))
    return {
        "flat": FamilyParams(mu=mu),
        "simanca": FamilyParams(lam=lam, mu=mu),
        "a03": FamilyParams(lam=lam, mu=mu),
        "fubini_study": FamilyParams(mu=mu),
        "hyperbolic": FamilyParams(mu=mu),
        "case11a": FamilyParams(lam=lam, mu=mu, kappa=kappa),
        "case6": FamilyParams(zeta=zeta, mu=mu, xi=xi),
        "case7": FamilyParams(lam=lam, mu=mu, xi=xi),
        "case8": FamilyParams(lam=lam, mu=mu, xi=xi),
        "case9": FamilyParams(zeta=zeta, mu=mu),
        "case10a": FamilyParams(mu=mu, kappa=kappa),
    }


def criterion_6():
    t0 = time.time()
    rng = np.random.default_rng(20240817)
    worst_scal = 0.0
    worst_ode = 0.0
    ok = True
    for _ in range(3):
        sets = _random_admissible(rng)
        for fam, params in sets.items():
            pot = family_potential(fam, params)
            prof = profile_of_family(fam, params)
            vals = np.array([curvature_report(pot, r).scal
                             for r in pot.interior_grid(10)])
            ref = prof.csck_scalar()
            mean = float(np.mean(vals))
            spread = float(np.max(np.abs(vals - mean)))
            # constancy: stdev-style spread <= 1e-8·|mean| or <= 1e-10 absolute
            ok &= spread <= max(1e-8 * abs(mean), 1e-10)
            ok &= abs(mean - ref) <= 1e-8 * max(abs(ref), 1.0)
            worst_scal = max(worst_scal, spread / max(abs(mean), 1e-2),
                             abs(mean - ref) / max(abs(ref), 1.0))
            lo, hi = t_interval(fam, params)
            lo, hi = max(lo, -4.0), min(hi, 4.0)
            ts = np.linspace(lo + 0.08 * (hi - lo), hi - 0.08 * (hi - lo), 20)
            worst_ode = max(worst_ode, ode_residual(fam, params, ts))
    ok = bool(ok and worst_ode <= 1e-9)
    return CriterionResult(
        "6", "cscK catalog: constant scal = −A·n·(n+1), dy/dt = ψ(y)",
        bool(ok), time.time() - t0,
        [f"worst scal deviation {worst_scal:.2e} (tol 1e-8), "
         f"worst ODE residual {worst_ode:.2e} (tol 1e-9), "
         "11 families x 3 random admissible parameter sets"])


# -- 7 -----------------------------------------------------------------------


def criterion_7():
    t0 = time.time()
    details = []
    ok = True

    v = derivative_sign_scan(
        family_potential("an0vii", FamilyParams(zeta=1.0 / 3.0, mu=3.0)), h_max=40)
    got = v.obstructed and v.witness.h == 3
    ok &= got
    details.append(f"7a an0vii(ζ=1/3, μ=3): {v.status.value}, h* = "
                   f"{v.witness.h if v.witness else None} (expect 3)")

    v = derivative_sign_scan(
        family_potential("an0v", FamilyParams(lam=1.5, mu=4.0, xi=0.5)), h_max=40)
    got = v.obstructed and v.witness.h == 7
    ok &= got
    details.append(f"7b an0v(λ=1.5, μ=4): {v.status.value}, h* = "
                   f"{v.witness.h if v.witness else None} (expect μλ/2+⌊λ⌋+3 = 7)")

    params = FamilyParams(lam=1.0, mu=1.0, xi=1.0)
    res = integer_root_test(profile_of_family("an0v", params),
                            y_limit_points("an0v", params))
    ok &= res.verdict.value == "not_induced"
    details.append(f"7c integer-root test on an0v(μλ/2 = 0.5): {res.verdict.value}")

    clean = [("flat", FamilyParams()),
             ("simanca", FamilyParams(lam=1.0)), ("simanca", FamilyParams(lam=2.0)),
             ("fubini_study", FamilyParams(mu=1.0)), ("fubini_study", FamilyParams(mu=2.0)),
             ("hyperbolic", FamilyParams(mu=1.7)),
             ("an0v", FamilyParams(lam=2.0, mu=4.0, xi=0.5))]
    bad = []
    for fam, params in clean:
        pot = family_potential(fam, params)
        grid = pot.interior_grid(10).tolist() + small_r_grid(pot, 20).tolist()
        v = derivative_sign_scan(pot, grid, h_max=40)
        if v.obstructed:
            bad.append((fam, params, v.witness.h))
    ok &= not bad
    details.append(f"7d no obstruction up to h_max=40 on 20-point grids: "
                   f"{'all clean' if not bad else bad}")
    return CriterionResult("7", "inducibility obstructions at the stated orders",
                           bool(ok), time.time() - t0, details)


# -- 8 -----------------------------------------------------------------------


def criterion_8():
    t0 = time.time()
    params = FamilyParams(lam=2.0, mu=4.0, xi=0.5)
    pot = family_potential("an0v", params)
    v = balanced_check(pot, 1, max_degree=12)
    details = [f"verdict: {v.status.value}; missing degrees {list(v.missing_degrees)}"]
    ok = (not v.balanced) and (3 in v.missing_degrees)
    nm3 = monomial_norm(pot, 1, (2, 1))
    ok &= not nm3.is_divergent
    details.append(f"degree-3 norm finite: ‖z₁²z₂‖² = {nm3.value:.6g} "
                   "(j+k = 3 > μλ/2 − (λ+1) = 1)")
    worst = 0.0
    for d in range(2, 11):
        for j in range(d + 1):
            q = monomial_norm(pot, 1, (j, d - j)).value
            c = norm_an0v_closed(params, (j, d - j))
            worst = max(worst, _rel(q, c))
    ok &= worst <= 1e-8
    details.append(f"Beta closed form vs quadrature, degrees 2..10: worst rel {worst:.2e}")
    return CriterionResult("8", "balanced failure of an0v(λ=2, μ=4, ξ=0.5)",
                           bool(ok), time.time() - t0, details)


# -- 9 -----------------------------------------------------------------------


def criterion_9():
    t0 = time.time()
    rng = np.random.default_rng(7)
    worst = 0.0
    sets = _random_admissible(rng)
    for fam, params in sets.items():
        pot = family_potential(fam, params)
        for r in pot.interior_grid(3):
            worst = max(worst, derivative_identity_residual(pot, r, k_max=10))
    pks = pk_recursion(3)
    ok_sym = pks[1].poly == PolyABy.of(1)
    p3 = PolyABy({(1, 0, 1): Fraction(2), (0, 0, 1): Fraction(3),
                  (0, 0, 0): Fraction(-2)})
    ok_sym &= pks[2].poly == p3
    third_line = p3 * PSI_SYMBOLIC + PolyABy({(0, 0, 3): Fraction(1),
                                              (0, 0, 2): Fraction(-3),
                                              (0, 0, 1): Fraction(2)})
    ok_sym &= (PSI_SYMBOLIC * pks[2].poly + falling_factorial_poly(3)) == third_line
    ok = worst <= 1e-9 and ok_sym
    return CriterionResult(
        "9", "P_k derivative identity (k ≤ 10) and exact P₂, P₃",
        bool(ok), time.time() - t0,
        [f"identity residual {worst:.2e} (tol 1e-9); "
         f"P₂ = 1 and P₃ third-line equality exact: {ok_sym}"])


# -- 10 ----------------------------------------------------------------------


def criterion_10():
    t0 = time.time()
    details = []
    ok = all(sum(eulerian_q(k)) == Fraction(math.factorial(k)) for k in range(11))
    details.append(f"q_k(1) = k! exact, k ≤ 10: {ok}")
    probe_ok = True
    for n in (1, 2):
        for k0 in (1, 2):
            for h in (0, 1, 2):
                res = psi_h_probe(n, k0, h)
                want = res.diverges if h == 0 else res.classification == "bounded"
                probe_ok &= bool(want)
    ok &= probe_ok
    details.append(f"ψ_h classifications over (n,k₀) in (1,2)²: {probe_ok}")
    fit = logterm_fit(DistortionProfile(n=2, terms=((2, 1.0),), T0=0.0))
    b_simanca = abs(fit.b_estimate)
    fit2 = logterm_fit(DistortionProfile(n=2, terms=((2, 1.0), (-1, 1.0)), T0=0.0))
    b_neg = fit2.b_estimate
    ok &= b_simanca <= 1e-6 and abs(b_neg + 1.0) <= 1e-3
    details.append(f"log-term: |b|(m²) = {b_simanca:.2e} (tol 1e-6), "
                   f"b(m²+1/m) = {b_neg:.6f} (expect −1 ± 1e-3)")
    return CriterionResult("10", "Szegő probes: Eulerian values, ψ_h, log-term",
                           bool(ok), time.time() - t0, details)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(verbose=True, stream=None):
    """Run every criterion; returns the list of results."""
    import sys

    stream = stream or sys.stdout
    results = []
    for fn in CRITERIA:
        try:
            res = fn()
        except TyczError as exc:
            res = CriterionResult(fn.__name__.split("_")[1], f"raised {type(exc).__name__}: {exc}",
                                  False)
        results.append(res)
        if verbose:
            print(res.line(), file=stream)
            for d in res.details:
                print(f"       {d}", file=stream)
    if verbose:
        npass = sum(r.passed for r in results)
        print(f"\n{npass}/{len(results)} criteria passed", file=stream)
    return results
