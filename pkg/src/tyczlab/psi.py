"""The t = log r change of variables and the cscK profile classification.

For a radial potential f(r) put F(t) = f(eᵗ), y = F'(t), ψ(y) = F''(t).
Constant scalar curvature turns into the first-order ODE y' = ψ(y) with

    ψ(y) = A y² + y + B/y^{n-2} + C/y^{n-1},    scal = −A·n·(n+1).

For n = 2 the reduction C = 0 gives ψ = A y² + y + B, whose solutions fall
into the eleven-family catalog of :mod:`tyczlab.potentials`.  This module
classifies a (A, B) profile into its family by root pattern and integrates
each family in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProfile, OutOfDomain, OutOfInterval
from .potentials import (
    FamilyId,
    FamilyParams,
    RadialPotential,
    _REGISTRY,
    _with_defaults,
    family_id,
)

#: absolute tolerance for root-pattern boundary decisions (double root, zero
#: root, A = 0); profiles within tolerance are classified as the boundary case
CLASSIFY_TOL = 1e-12


@dataclass(frozen=True)
class PsiProfile:
    """ψ(y) = A y² + y + B/y^{n-2} + C/y^{n-1} (n = 2: A y² + y + B + C/y)."""

    A: float
    B: float
    C: float = 0.0
    n: int = 2

    def __call__(self, y):
        y = np.asarray(y, dtype=float) if not np.isscalar(y) else y
        out = self.A * y ** 2 + y
        if self.n == 2:
            return out + self.B + self.C / y if self.C else out + self.B
        return out + self.B / y ** (self.n - 2) + self.C / y ** (self.n - 1)

    def csck_scalar(self):
        """Scalar curvature of the metric this profile solves: −A·n·(n+1)."""
        return -self.A * self.n * (self.n + 1)

    @property
    def a3_zero(self):
        # for n=2 cscK radial metrics, the third expansion coefficient
        # vanishes exactly when C does; carried as metadata only
        return self.C == 0.0

    def to_json(self):
        return {"A": self.A, "B": self.B, "C": self.C, "n": self.n}

    @classmethod
    def from_json(cls, d):
        return cls(A=float(d["A"]), B=float(d["B"]), C=float(d.get("C", 0.0)),
                   n=int(d.get("n", 2)))


def profile_of_family(family, params: FamilyParams | None = None) -> PsiProfile:
    """The (A, B) profile of a catalog family (C = 0, n = 2)."""
    fid = family_id(family)
    fam = _REGISTRY[fid]
    p = _with_defaults(fam, params)
    A, B = fam.profile_ab(p)
    return PsiProfile(A=A, B=B, C=0.0, n=2)


def log_coords(pot: RadialPotential, r0: float):
    """(t, y, ψ) at r0:  t = log r0, y = r0 f'(r0), ψ = r0 f'(r0) + r0² f''(r0)."""
    if not pot.in_domain(r0):
        raise OutOfDomain(f"r = {r0:g} outside domain of {pot.label}")
    j = pot.jet(r0, 2)
    fp = j.coef[1]
    fpp = 2.0 * j.coef[2]
    y = r0 * fp
    return math.log(r0), float(y), float(y + r0 ** 2 * fpp)


def classify_psi(profile: PsiProfile, tol: float = CLASSIFY_TOL):
    """Map a C = 0, n = 2 profile to its family and parameters.

    Root-sign patterns of A y² + y + B decide the family; boundary patterns
    (double root, root at zero, A = 0) within ``tol`` classify as the
    boundary family.  ξ and κ are free integration constants and come back
    as None.  Profiles that never satisfy y > 0, ψ(y) > 0 (so describe no
    metric) raise DegenerateProfile, as do NaN inputs.
    """
    A, B = profile.A, profile.B
    if not (math.isfinite(A) and math.isfinite(B)):
        raise DegenerateProfile("profile coefficients must be finite")
    if profile.C != 0.0 or profile.n != 2:
        raise DegenerateProfile("only C = 0, n = 2 profiles are classified")

    if abs(A) <= tol:
        if abs(B) <= tol:
            return FamilyId.FLAT, FamilyParams()
        if B < 0:
            return FamilyId.SIMANCA, FamilyParams(lam=-B)
        return FamilyId.A03, FamilyParams(lam=B)

    disc = 1.0 - 4.0 * A * B
    if A > 0:
        mu = 1.0 / A
        if abs(disc) <= tol:
            return FamilyId.CASE10A, FamilyParams(mu=mu)
        if disc < 0:
            lam = math.sqrt(A * B - 0.25)
            return FamilyId.CASE11A, FamilyParams(lam=lam, mu=mu)
        root_hi = (-1.0 + math.sqrt(disc)) / (2.0 * A)
        if abs(root_hi) <= tol:
            return FamilyId.HYPERBOLIC, FamilyParams(mu=mu)
        if root_hi > 0:
            return FamilyId.CASE7, FamilyParams(lam=2.0 * root_hi / mu, mu=mu)
        return FamilyId.CASE6, FamilyParams(zeta=1.0 + 2.0 * root_hi / mu, mu=mu)

    mu = -1.0 / A
    if disc <= tol:
        raise DegenerateProfile(
            "A < 0 with non-positive discriminant: ψ(y) ≤ 0 everywhere, no metric")
    sq = math.sqrt(disc)
    root_lo = (-1.0 + sq) / (2.0 * A)
    root_hi = (-1.0 - sq) / (2.0 * A)
    if root_hi <= tol:
        raise DegenerateProfile(
            "A < 0 with no positive root: ψ(y) < 0 for all y > 0, no metric")
    if abs(root_lo) <= tol:
        return FamilyId.FUBINI_STUDY, FamilyParams(mu=mu)
    if root_lo > 0:
        mu_sum = root_lo + root_hi
        return FamilyId.CASE9, FamilyParams(zeta=(root_hi - root_lo) / mu_sum, mu=mu_sum)
    return FamilyId.CASE8, FamilyParams(lam=-2.0 * root_lo / mu, mu=mu)


def integrate_family(family, params: FamilyParams | None, t):
    """The closed-form solution y(t) = F'(t) of y' = ψ(y) for this family.

    Raises OutOfInterval when t leaves the maximal interval of definition.
    """
    fid = family_id(family)
    fam = _REGISTRY[fid]
    p = _with_defaults(fam, params)
    lo, hi = fam.t_interval(p)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= lo) or np.any(t_arr >= hi):
        raise OutOfInterval(
            f"t outside maximal interval ({lo:g}, {hi:g}) of {fid.value}")
    return fam.y_of_t(p, t)


def t_interval(family, params: FamilyParams | None = None):
    """Maximal interval of definition of y(t) for the family."""
    fid = family_id(family)
    fam = _REGISTRY[fid]
    return fam.t_interval(_with_defaults(fam, params))


def y_limit_points(family, params: FamilyParams | None = None):
    """Limit values of y = F' at the ends of the maximal interval."""
    fid = family_id(family)
    fam = _REGISTRY[fid]
    return fam.y_interval(_with_defaults(fam, params))


def ode_residual(family, params: FamilyParams | None, t_points, dt=None):
    """max |dy/dt − ψ(y)| over the points, with dy/dt from a degree-1 jet.

    The derivative comes from the closed form y(t ± h) fitted by the exact
    jet arithmetic of the potential: here we use the analytic identity
    y'(t) = r dy/dr with y(r) from the potential tree, which is jet-exact.
    """
    fid = family_id(family)
    fam = _REGISTRY[fid]
    p = _with_defaults(fam, params)
    pot = _potential_for(fid, p)
    prof = PsiProfile(*fam.profile_ab(p))
    worst = 0.0
    for t in np.atleast_1d(t_points):
        r = math.exp(t)
        # dy/dt = r * d(y)/dr, from the derivative tree of y(r) = r f'(r)
        dydt = r * pot._yp_tree(r)
        resid = abs(dydt - prof(pot.y(r)))
        worst = max(worst, resid / max(1.0, abs(dydt)))
    return worst


def _potential_for(fid, p):
    from .potentials import family_potential

    return family_potential(fid, p)
