"""Projective-inducibility tests and the balanced-metric check.

Four complementary obstruction tools for radial metrics:

* ``derivative_sign_scan`` — a strictly negative derivative dʰ(e^f)/drʰ at
  any in-domain point rules out a Kähler immersion into any projective
  space.  Derivatives come from scaled jets of e^f (local variable u with
  r = r₀(1+u)), whose coefficients stay bounded at tiny r₀ where the plain
  Taylor coefficients overflow past order ~30.
* ``integer_root_test`` — for a profile ψ = Ay² + y + B: a positive root of
  ψ that is a limit value of y = F' must be an integer, and if y can reach 0
  then B must vanish.  Purely algebraic, no scanning.
* ``pk_recursion`` — the exact polynomial identity

      e^{-f} dᵏ(e^f)/drᵏ = [ψ(y)·P_k(y) + y(y−1)⋯(y−k+1)] / rᵏ

  with P₁ = 0 and P_{k+1} = (ψP_k)' + (y(y−1)⋯(y−k+1))' + (y−k)P_k, carried
  out in exact rational arithmetic over the ring ℚ[A, B][y].
* ``balanced_check`` — degree-by-degree comparison of the kernel-sum
  coefficients Σ 1/N(j,k) against the monomial expansion of e^Φ; a single
  constant must match every convergent degree, and any degree with a finite
  norm but no e^Φ term is a certified balancing failure.

Only obstructions are certified; ``NO_OBSTRUCTION`` is a bounded-search
statement, and positive inducibility verdicts come from the closed-form
catalog (``known_inducible``), never from the scan.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotRepresentable, OutOfDomain, ParamOutOfRange
from .jets import resolve_dtype
from .potentials import FamilyId, FamilyParams, RadialPotential, family_id
from .psi import PsiProfile

SCAN_REL_TOL = 1e-12


# ---------------------------------------------------------------------------
# P_k polynomials over ℚ[A, B][y]
# ---------------------------------------------------------------------------


class PolyABy:
    """Polynomial in y with coefficients in ℚ[A, B], stored sparsely.

    Keys are (a_power, b_power, y_power) with Fraction values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def of(cls, value, a=0, b=0, y=0):
        return cls({(a, b, y): Fraction(value)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return PolyABy(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyABy({k: v * other for k, v in self.terms.items()})
        out = {}
        for (a1, b1, y1), v1 in self.terms.items():
            for (a2, b2, y2), v2 in other.terms.items():
                k = (a1 + a2, b1 + b2, y1 + y2)
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return PolyABy(out)

    __rmul__ = __mul__

    def dy(self):
        out = {}
        for (a, b, y), v in self.terms.items():
            if y > 0:
                out[(a, b, y - 1)] = out.get((a, b, y - 1), Fraction(0)) + v * y
        return PolyABy(out)

    def __eq__(self, other):
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, y, A, B):
        total = 0.0
        for (a, b, yp), v in self.terms.items():
            total += float(v) * (A ** a) * (B ** b) * (y ** yp)
        return total

    def evaluate_exact(self, y, A, B) -> Fraction:
        """Exact rational evaluation (floats enter as exact binary rationals).

        The identity value ψP_k + ff_k is ~ rᵏ·(jet scale): the monomials
        cancel twelve digits and float Horner destroys it; Fractions don't.
        """
        yF, AF, BF = Fraction(y), Fraction(A), Fraction(B)
        total = Fraction(0)
        for (a, b, yp), v in self.terms.items():
            total += v * AF ** a * BF ** b * yF ** yp
        return total

    def y_coefficients(self):
        """Map y_power -> {(a_power, b_power): Fraction}."""
        out: dict[int, dict] = {}
        for (a, b, y), v in self.terms.items():
            out.setdefault(y, {})[(a, b)] = v
        return out

    def __repr__(self):
        def mono(k, v):
            a, b, y = k
            parts = [str(v)]
            for sym, e in (("A", a), ("B", b), ("y", y)):
                if e == 1:
                    parts.append(sym)
                elif e > 1:
                    parts.append(f"{sym}^{e}")
            return "*".join(parts)

        return " + ".join(mono(k, v) for k, v in sorted(self.terms.items())) or "0"


PSI_SYMBOLIC = PolyABy({(1, 0, 2): Fraction(1), (0, 0, 1): Fraction(1),
                        (0, 1, 0): Fraction(1)})


def falling_factorial_poly(k) -> PolyABy:
    """y(y−1)(y−2)⋯(y−k+1) as an exact polynomial (1 for k = 0)."""
    out = PolyABy.of(1)
    for i in range(k):
        out = out * PolyABy({(0, 0, 1): Fraction(1), (0, 0, 0): Fraction(-i)})
    return out


@dataclass(frozen=True)
class PkPolynomial:
    """P_k of the derivative identity, exact over ℚ[A, B][y]."""

    k: int
    poly: PolyABy

    def evaluate(self, y, A, B):
        return self.poly.evaluate(y, A, B)


def pk_recursion(k_max, profile: PsiProfile | None = None) -> list[PkPolynomial]:
    """P₁..P_{k_max} for the derivative identity, exact in ℚ[A, B][y].

    E_k := ψ P_k + y(y−1)⋯(y−k+1) satisfies E_{k+1} = ψ E_k' +
    (y−k) E_k, which unwinds to the division-free step

        P_{k+1} = (ψ P_k)' + ffₖ' + (y − k) P_k .

    The polynomials are universal in (A, B); ``profile`` is accepted only
    for interface symmetry (evaluation happens via PkPolynomial.evaluate).
    """
    if k_max < 1:
        raise ParamOutOfRange("k_max must be >= 1")
    out = [PkPolynomial(1, PolyABy())]
    pk = out[0].poly
    for k in range(1, k_max):
        ffk = falling_factorial_poly(k)
        pk = (PSI_SYMBOLIC * pk).dy() + ffk.dy() \
            + PolyABy({(0, 0, 1): Fraction(1), (0, 0, 0): Fraction(-k)}) * pk
        out.append(PkPolynomial(k + 1, pk))
    return out


def derivative_identity_residual(pot: RadialPotential, r, k_max=10):
    """max rel. deviation of e^{-f}·dᵏ(e^f)/drᵏ from [ψP_k + ff_k(y)]/rᵏ, k ≤ k_max."""
    from .psi import log_coords, profile_of_family

    prof = profile_of_family(pot.family, pot.params)
    _, y, _ = log_coords(pot, r)
    pks = pk_recursion(k_max)
    fj = pot.jet(r, k_max)
    ej = fj.exp()
    yF, AF, BF = Fraction(y), Fraction(prof.A), Fraction(prof.B)
    psiF = AF * yF * yF + yF + BF
    worst = 0.0
    for k in range(1, k_max + 1):
        lhs = ej.derivative(k) / ej.coef[0]
        ff = falling_factorial_poly(k).evaluate_exact(y, prof.A, prof.B)
        pk = pks[k - 1].poly.evaluate_exact(y, prof.A, prof.B)
        rhs = float(psiF * pk + ff) / r ** k
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-30))
    return worst


# ---------------------------------------------------------------------------
# Inequality system
# ---------------------------------------------------------------------------


def inequality_system(A, B, y):
    """The first three derivative-sign conditions written in (A, B, y).

    (y ≥ 0,   (A+1)y² + B ≥ 0,   (2Ay+3y−2)(Ay²+y+B) + 2y − 3y² + y³ ≥ 0)
    """
    c1 = y >= 0
    c2 = (A + 1) * y ** 2 + B >= 0
    c3 = (2 * A * y + 3 * y - 2) * (A * y ** 2 + y + B) + 2 * y - 3 * y ** 2 + y ** 3 >= 0
    return bool(c1), bool(c2), bool(c3)


# ---------------------------------------------------------------------------
# Derivative-sign scan
# ---------------------------------------------------------------------------


class ScanStatus(str, enum.Enum):
    OBSTRUCTED = "obstructed"
    NO_OBSTRUCTION = "no_obstruction_found"


@dataclass(frozen=True)
class ScanWitness:
    """A strictly negative derivative of e^f: order, point, value diagnostics."""

    h: int
    r: float
    scaled_coefficient: float   # r^h · f⁽ʰ⁾-style jet coefficient of e^f
    log_abs_derivative: float   # log |dʰ e^f/drʰ| at r
    sign: int

    def to_json(self):
        return {"h": self.h, "r": self.r,
                "scaled_coefficient": self.scaled_coefficient,
                "log_abs_derivative": self.log_abs_derivative, "sign": self.sign}


@dataclass(frozen=True)
class InducibilityVerdict:
    status: ScanStatus
    h_max: int
    r_grid: tuple
    witness: ScanWitness | None = None
    witnesses: tuple = ()
    note: str = ""

    @property
    def obstructed(self):
        return self.status == ScanStatus.OBSTRUCTED

    def to_json(self):
        return {"status": self.status.value, "h_max": self.h_max,
                "r_grid": list(self.r_grid),
                "witness": None if self.witness is None else self.witness.to_json(),
                "witnesses": [w.to_json() for w in self.witnesses],
                "note": self.note}


def small_r_grid(pot: RadialPotential, count=31):
    """Geometric grid r_top·2^{-i} toward the domain's lower end.

    Boundary obstructions show up as r → r_lo (usually 0⁺), so the grid is
    geometric in the distance to the lower endpoint.
    """
    lo, hi = pot.domain
    r_top = 0.5 * (lo + hi) if math.isfinite(hi) else max(2.0 * lo, 1.0)
    steps = 2.0 ** -np.arange(count)
    if lo == 0.0:
        return r_top * steps
    return lo + (r_top - lo) * steps


def derivative_sign_scan(pot: RadialPotential, r_grid=None, h_max=40,
                         rel_tol=SCAN_REL_TOL, precision=None) -> InducibilityVerdict:
    """Scan jets of e^f for a strictly negative derivative (an obstruction).

    A coefficient counts as negative only below −rel_tol × (running max of
    the lower-order coefficients), so rounding noise in the jet recursions
    cannot manufacture a witness.  The verdict's witness is the
    lexicographically smallest (h, r) over the grid.
    """
    if r_grid is None:
        r_grid = small_r_grid(pot)
    r_grid = sorted(float(r) for r in np.atleast_1d(r_grid))
    if h_max > pot.order_cap:
        raise ParamOutOfRange(f"h_max {h_max} exceeds jet order cap {pot.order_cap}")
    dtype = resolve_dtype(precision)
    coefs = {}
    for r in r_grid:
        if not pot.in_domain(r):
            raise OutOfDomain(f"scan point r = {r:g} outside domain of {pot.label}")
        fj = pot.jet(r, h_max, precision=dtype, scaled=True)
        ej = fj.exp()
        ej.check_finite()
        coefs[r] = np.asarray(ej.coef, dtype=float)
    witnesses = []
    for h in range(1, h_max + 1):
        for r in r_grid:
            c = coefs[r]
            scale = float(np.max(np.abs(c[: h + 1])))
            if c[h] < -rel_tol * scale:
                lg = (math.log(abs(float(c[h]))) + math.lgamma(h + 1)
                      - h * math.log(r))
                witnesses.append(ScanWitness(h, r, float(c[h]), lg, -1))
        if witnesses:
            break
    if witnesses:
        return InducibilityVerdict(ScanStatus.OBSTRUCTED, h_max, tuple(r_grid),
                                   witness=witnesses[0], witnesses=tuple(witnesses))
    return InducibilityVerdict(
        ScanStatus.NO_OBSTRUCTION, h_max, tuple(r_grid),
        note="bounded search; not a proof of inducibility")


def recheck_witness(pot: RadialPotential, witness: ScanWitness, rel=1e-9):
    """Recompute the witness coefficient (extended precision) and compare."""
    fj = pot.jet(witness.r, witness.h + 4, precision="extended", scaled=True)
    c = float(fj.exp().coef[witness.h])
    ref = witness.scaled_coefficient
    return abs(c - ref) <= rel * max(abs(ref), 1e-300), c


# ---------------------------------------------------------------------------
# Integer-root test
# ---------------------------------------------------------------------------


class RootVerdict(str, enum.Enum):
    NOT_INDUCED = "not_induced"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IntegerRootResult:
    verdict: RootVerdict
    reason: str = ""

    def to_json(self):
        return {"verdict": self.verdict.value, "reason": self.reason}


def integer_root_test(profile: PsiProfile, y0_candidates, tol=1e-9) -> IntegerRootResult:
    """Root-based obstruction for a C = 0 profile.

    ``y0_candidates`` are the limit values of y = F' on the maximal interval
    (use :func:`tyczlab.psi.y_limit_points`).  Not induced when a positive
    candidate is a non-integer root of ψ, or when 0 is a candidate and B ≠ 0.
    """
    if profile.C != 0.0:
        raise ParamOutOfRange("integer-root test needs a C = 0 profile")
    for y0 in y0_candidates:
        if not math.isfinite(y0):
            continue
        if abs(y0) <= tol:
            if abs(profile.B) > tol:
                return IntegerRootResult(
                    RootVerdict.NOT_INDUCED,
                    f"y can reach 0 but B = {profile.B:g} != 0")
            continue
        if y0 > 0 and abs(profile(y0)) <= tol * max(1.0, y0 ** 2) \
                and abs(y0 - round(y0)) > tol:
            return IntegerRootResult(
                RootVerdict.NOT_INDUCED,
                f"positive non-integer root y0 = {y0:g} is a limit value of F'")
    return IntegerRootResult(RootVerdict.INCONCLUSIVE, "no root obstruction")


def known_inducible(family, params: FamilyParams, tol=1e-9) -> bool | None:
    """Catalog lookup of proven inducibility: True/False when known, else None.

    flat and simanca (λ ∈ ℤ) are induced; fubini_study needs μ ∈ ℤ;
    hyperbolic always; case7 needs λ, μλ/2 ∈ ℤ with finite norms.  The other
    families are never induced.
    """
    fid = family_id(family)
    is_int = lambda x: abs(x - round(x)) <= tol
    if fid == FamilyId.FLAT or fid == FamilyId.HYPERBOLIC:
        return True
    if fid == FamilyId.SIMANCA:
        return is_int(params.lam)
    if fid == FamilyId.FUBINI_STUDY:
        return is_int(params.mu)
    if fid == FamilyId.CASE7:
        return is_int(params.lam) and is_int(params.mu * params.lam / 2.0)
    if fid in (FamilyId.A03, FamilyId.CASE11A, FamilyId.CASE6, FamilyId.CASE8,
               FamilyId.CASE9, FamilyId.CASE10A):
        return False
    return None


# ---------------------------------------------------------------------------
# Balanced check
# ---------------------------------------------------------------------------


class BalancedStatus(str, enum.Enum):
    BALANCED = "balanced"
    NOT_BALANCED = "not_balanced"


@dataclass(frozen=True)
class BalancedVerdict:
    status: BalancedStatus
    constant: float | None = None
    checked_degree: int = 0
    reason: str = ""
    missing_degrees: tuple = ()
    mismatch: tuple | None = None   # (degree, lhs, C·rhs)

    @property
    def balanced(self):
        return self.status == BalancedStatus.BALANCED

    def to_json(self):
        return {"status": self.status.value, "constant": self.constant,
                "checked_degree": self.checked_degree, "reason": self.reason,
                "missing_degrees": list(self.missing_degrees),
                "mismatch": None if self.mismatch is None else list(self.mismatch)}


def balanced_check(pot: RadialPotential, m=1, max_degree=16, rtol=1e-8,
                   tol=1e-10) -> BalancedVerdict:
    """Is Σ x₁ʲx₂ᵏ/N(j,k) a constant multiple of e^Φ, degree by degree?

    Radial reduction: both sides spread a degree d across (j, k) with the
    same multinomial weights, so it suffices to compare the degree arrays

        lhs_d = (d+1)/I_m(d)   (n = 2;  1/I_m(d) for n = 1)

    against C·E_d where e^Φ = Σ E_d r^d.  NotBalanced comes with either the
    missing degrees (finite norm, no e^Φ term) or the first coefficient
    mismatch.  Potentials whose e^Φ has no monomial expansion raise
    NotRepresentable.
    """
    from .bergman import _radial_table, _require_level

    m = _require_level(m)
    E = pot.expansion_coefficients(max_degree)
    if E is None:
        raise NotRepresentable(
            f"e^Φ of {pot.label} has no monomial Taylor expansion; "
            "balanced check does not apply")
    table = _radial_table(pot, m)
    lhs = np.full(max_degree + 1, np.nan)
    finite = np.zeros(max_degree + 1, dtype=bool)
    for d in range(max_degree + 1):
        if pot.convergence(m, d) is not None:
            continue
        finite[d] = True
        log_i = table.log_norm_integral(d)
        lhs[d] = math.exp((math.log(d + 1) if pot.n == 2 else 0.0) - log_i)
    # expansion coefficients are analytic formulas: zeros are structural,
    # not rounding artifacts, so exact-zero testing is the right notion
    missing = [d for d in range(max_degree + 1)
               if finite[d] and abs(E[d]) <= 1e-300]
    if missing:
        return BalancedVerdict(
            BalancedStatus.NOT_BALANCED, checked_degree=max_degree,
            reason=f"missing monomial degree {missing[0]}: finite norm but no "
                   f"e^Φ term", missing_degrees=tuple(missing))
    e_scale = float(np.max(np.abs(E))) or 1.0
    for d in range(max_degree + 1):
        if not finite[d] and abs(E[d]) > tol * e_scale:
            return BalancedVerdict(
                BalancedStatus.NOT_BALANCED, checked_degree=max_degree,
                reason=f"degree {d} has a divergent norm but e^Φ coefficient "
                       f"{E[d]:g}", mismatch=(d, 0.0, float(E[d])))
    ds = [d for d in range(max_degree + 1) if finite[d]]
    if not ds:
        return BalancedVerdict(BalancedStatus.NOT_BALANCED, checked_degree=max_degree,
                               reason="no convergent degrees at this level")
    ratios = np.array([lhs[d] / E[d] for d in ds])
    C = float(np.median(ratios))
    for d, rat in zip(ds, ratios):
        if abs(rat - C) > rtol * abs(C):
            return BalancedVerdict(
                BalancedStatus.NOT_BALANCED, checked_degree=max_degree,
                reason=f"coefficient mismatch at degree {d}",
                mismatch=(d, float(lhs[d]), float(C * E[d])))
    return BalancedVerdict(BalancedStatus.BALANCED, constant=C,
                           checked_degree=max_degree)
