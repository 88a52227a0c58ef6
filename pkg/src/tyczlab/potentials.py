"""Radial and Reinhardt Kähler potentials with exact jet differentiation.

The catalog holds the eleven constant-scalar-curvature radial families.  Each
entry stores the closed-form potential f(r) (r = |z|²) as a composition tree,
its maximal domain, the quadratic profile (A, B) of ψ(y) = F''(t) as a
function of y = F'(t) (t = log r), the closed form y(t), and the endpoint
exponents that decide which weighted monomial norms converge.

Catalog (label — ψ(y) — y(t) — f(r)):

    flat          ψ = y                    y = μeᵗ                f = μr
    simanca       ψ = y − λ                y = μeᵗ + λ            f = μr + λ log r
    a03           ψ = y + λ                y = μeᵗ − λ            f = μr − λ log r
    fubini_study  ψ = y(μ−y)/μ             y = μeᵗ/(1+eᵗ)         f = μ log(1+r)
    hyperbolic    ψ = y(μ+y)/μ             y = μeᵗ/(1−eᵗ)         f = −μ log(1−r)
    case11a       ψ = μ[(y/μ+½)² + λ²]     y = μ[λ tan(λt+κ) − ½] f = −μ log cos(λ log r+κ) − (μ/2) log r
    case6         ψ = (y+μ(1−ζ)/2)(y+μ(1+ζ)/2)/μ
                                           y = μζξe^{ζt}/(1−ξe^{ζt}) − μ(1−ζ)/2
                                                                  f = −μ log(1−ξ r^ζ) − (μ(1−ζ)/2) log r
    case7         ψ = (y−μλ/2)(y+μλ/2+μ)/μ
                                           y = μ(λ+1)ξe^{(λ+1)t}/(1−ξe^{(λ+1)t}) + μλ/2
                                                                  f = (μλ/2) log r − μ log(1−ξ r^{λ+1})
    case8         ψ = −(y+μλ/2)(y−μλ/2−μ)/μ
                                           y = −μ(λ+1)ξe^{−(λ+1)t}/(1+ξe^{−(λ+1)t}) + μ(λ+2)/2
                                                                  f = μ log(1+ξ r^{−(λ+1)}) + (μ(λ+2)/2) log r
    case9         ψ = −(y−μ(1+ζ)/2)(y−μ(1−ζ)/2)/μ
                                           y = −μζe^{−ζt}/(1+e^{−ζt}) + μ(1+ζ)/2
                                                                  f = μ log(1+r^{−ζ}) + (μ(1+ζ)/2) log r
    case10a       ψ = (y+μ/2)²/μ           y = μ[1/(κ−t) − ½]     f = −μ log(κ − log r) − (μ/2) log r

The aliases an0fs, an0hyp, an0iii..an0viii are accepted everywhere a family
tag is.  ξ and κ are free integration constants; each closed form above is
one concrete antiderivative of y(t)/e^t, so f is pinned (distortion functions
do not see the additive constant).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
from scipy.special import gammaln

from . import trees
from .errors import (
    OrderTooLarge,
    OutOfDomain,
    ParamOutOfRange,
    UnknownFamily,
)
from .jets import DEFAULT_ORDER_CAP, Jet, resolve_dtype
from .trees import Expr, const, eval_jet1, eval_jet2, expr_from_json, radial_jet2, var

INF = math.inf


class FamilyId(str, enum.Enum):
    FLAT = "flat"
    SIMANCA = "simanca"
    A03 = "a03"
    FUBINI_STUDY = "fubini_study"
    HYPERBOLIC = "hyperbolic"
    CASE11A = "case11a"
    CASE6 = "case6"
    CASE7 = "case7"
    CASE8 = "case8"
    CASE9 = "case9"
    CASE10A = "case10a"


_ALIASES = {
    "fs": FamilyId.FUBINI_STUDY,
    "an0fs": FamilyId.FUBINI_STUDY,
    "hyp": FamilyId.HYPERBOLIC,
    "an0hyp": FamilyId.HYPERBOLIC,
    "a01": FamilyId.FLAT,
    "a02": FamilyId.SIMANCA,
    "an0iii": FamilyId.CASE11A,
    "an0iv": FamilyId.CASE6,
    "an0v": FamilyId.CASE7,
    "an0vi": FamilyId.CASE8,
    "an0vii": FamilyId.CASE9,
    "an0viii": FamilyId.CASE10A,
}


def family_id(tag) -> FamilyId:
    """Resolve a family tag or alias (case-insensitive) to a FamilyId."""
    if isinstance(tag, FamilyId):
        return tag
    key = str(tag).strip().lower().replace("-", "_")
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        return FamilyId(key)
    except ValueError:
        raise UnknownFamily(f"unknown family tag {tag!r}") from None


@dataclass(frozen=True)
class FamilyParams:
    """Real parameters λ, μ, ξ, ζ, κ; a field is None when the family ignores it."""

    lam: float | None = None
    mu: float | None = None
    xi: float | None = None
    zeta: float | None = None
    kappa: float | None = None

    def to_json(self):
        out = {}
        for key, name in (("lam", "lambda"), ("mu", "mu"), ("xi", "xi"),
                          ("zeta", "zeta"), ("kappa", "kappa")):
            v = getattr(self, key)
            if v is not None:
                out[name] = v
        return out

    @classmethod
    def from_json(cls, d):
        d = dict(d)
        if "lambda" in d:
            d["lam"] = d.pop("lambda")
        return cls(**{k: float(v) for k, v in d.items()})


def _is_int(x, tol=1e-9):
    return abs(x - round(x)) <= tol


# ---------------------------------------------------------------------------
# Convergence certificates for the weighted monomial norms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Divergence:
    """Certificate that the degree-d norm integral diverges.

    endpoint:  'r->0', 'r->inf' or 'boundary' (finite endpoint where the gap
               1 - ξ r^{λ+1}, cos(λ log r + κ), ... vanishes)
    exponent:  local power-law exponent of the integrand there; divergence is
               exponent ≤ -1 at a finite endpoint / exponent ≥ -1 at infinity.
    """

    endpoint: str
    exponent: float

    def __str__(self):
        return f"divergent at {self.endpoint} (integrand exponent {self.exponent:g})"


def _conv_cert(expo0=None, expo_inf=None, expo_gap=None):
    """None if every endpoint test passes, else the failing certificate."""
    if expo0 is not None and expo0 <= -1.0:
        return Divergence("r->0", expo0)
    if expo_gap is not None and expo_gap <= -1.0:
        return Divergence("boundary", expo_gap)
    if expo_inf is not None and expo_inf >= -1.0:
        return Divergence("r->inf", expo_inf)
    return None


# ---------------------------------------------------------------------------
# Family registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Family:
    id: FamilyId
    required: tuple
    defaults: dict
    make_tree: callable          # params, -> Expr for f(r)
    domain: callable             # params -> (r_lo, r_hi)
    profile_ab: callable         # params -> (A, B) of ψ = A y² + y + B
    y_of_t: callable             # params, t -> y   (vectorized)
    t_interval: callable         # params -> (t_lo, t_hi)
    y_interval: callable         # params -> (y_lo, y_hi) attained limits
    convergence: callable        # params, m, d, n -> Divergence | None
    expansion: callable | None   # params, dmax -> coefficients of e^f, or None
    y_of_r: callable = None      # params, r -> y, cancellation-free
    w_of_r: callable = None      # params, r -> (rf')', cancellation-free
    description: str = ""

    def validate(self, p: FamilyParams):
        for name in self.required:
            if getattr(p, name) is None:
                raise ParamOutOfRange(f"family {self.id.value} needs parameter {name}")
        if p.mu is not None and not p.mu > 0:
            raise ParamOutOfRange("mu must be > 0")
        if p.lam is not None and not p.lam > 0:
            raise ParamOutOfRange("lambda must be > 0")
        if p.xi is not None and not p.xi > 0:
            raise ParamOutOfRange("xi must be > 0")
        if p.zeta is not None and not (0.0 < p.zeta < 1.0):
            raise ParamOutOfRange("zeta must lie in (0, 1)")


def _with_defaults(fam: _Family, params: FamilyParams | None) -> FamilyParams:
    p = params or FamilyParams()
    updates = {}
    for name, val in fam.defaults.items():
        if getattr(p, name) is None:
            updates[name] = val
    used = set(fam.required) | set(fam.defaults)
    for name in ("lam", "mu", "xi", "zeta", "kappa"):
        if name not in used and getattr(p, name) is not None:
            updates[name] = None
    if updates:
        p = replace(p, **updates)
    fam.validate(p)
    return p


def _r(): return var(0)


def _log_r(): return trees.log(var(0))


# flat -----------------------------------------------------------------------

def _flat_tree(p):
    return trees.mul(const(p.mu), _r())


# simanca / a03 ---------------------------------------------------------------

def _simanca_tree(p):
    return trees.add(trees.mul(const(p.mu), _r()), trees.mul(const(p.lam), _log_r()))


def _a03_tree(p):
    return trees.sub(trees.mul(const(p.mu), _r()), trees.mul(const(p.lam), _log_r()))


# fubini-study / hyperbolic ---------------------------------------------------

def _fs_tree(p):
    return trees.mul(const(p.mu), trees.log(trees.add(const(1.0), _r())))


def _hyp_tree(p):
    return trees.mul(const(-p.mu), trees.log(trees.sub(const(1.0), _r())))


# case11a ---------------------------------------------------------------------

def _case11a_tree(p):
    theta = trees.add(trees.mul(const(p.lam), _log_r()), const(p.kappa))
    return trees.sub(
        trees.mul(const(-p.mu), trees.log(trees.cos(theta))),
        trees.mul(const(p.mu / 2.0), _log_r()),
    )


def _case11a_t_interval(p):
    lo = (math.atan(1.0 / (2.0 * p.lam)) - p.kappa) / p.lam
    hi = (math.pi / 2.0 - p.kappa) / p.lam
    return lo, hi


# case6 -----------------------------------------------------------------------

def _case6_tree(p):
    gap = trees.sub(const(1.0), trees.mul(const(p.xi), trees.powc(_r(), p.zeta)))
    return trees.sub(
        trees.mul(const(-p.mu), trees.log(gap)),
        trees.mul(const(p.mu * (1.0 - p.zeta) / 2.0), _log_r()),
    )


def _case6_domain(p):
    lo = ((1.0 - p.zeta) / ((1.0 + p.zeta) * p.xi)) ** (1.0 / p.zeta)
    hi = (1.0 / p.xi) ** (1.0 / p.zeta)
    return lo, hi


# case7 -----------------------------------------------------------------------

def _case7_tree(p):
    gap = trees.sub(const(1.0), trees.mul(const(p.xi), trees.powc(_r(), p.lam + 1.0)))
    return trees.sub(
        trees.mul(const(p.mu * p.lam / 2.0), _log_r()),
        trees.mul(const(p.mu), trees.log(gap)),
    )


# case8 -----------------------------------------------------------------------

def _case8_tree(p):
    bump = trees.add(const(1.0), trees.mul(const(p.xi), trees.powc(_r(), -(p.lam + 1.0))))
    return trees.add(
        trees.mul(const(p.mu), trees.log(bump)),
        trees.mul(const(p.mu * (p.lam + 2.0) / 2.0), _log_r()),
    )


# case9 -----------------------------------------------------------------------

def _case9_tree(p):
    bump = trees.add(const(1.0), trees.powc(_r(), -p.zeta))
    return trees.add(
        trees.mul(const(p.mu), trees.log(bump)),
        trees.mul(const(p.mu * (1.0 + p.zeta) / 2.0), _log_r()),
    )


# case10a ---------------------------------------------------------------------

def _case10a_tree(p):
    return trees.sub(
        trees.mul(const(-p.mu), trees.log(trees.sub(const(p.kappa), _log_r()))),
        trees.mul(const(p.mu / 2.0), _log_r()),
    )


# expansion coefficient tables (e^f = Σ E_d r^d), where representable ---------


def _flat_expansion(p, dmax):
    d = np.arange(dmax + 1, dtype=float)
    return np.exp(d * math.log(p.mu) - gammaln(d + 1.0))


def _simanca_expansion(p, dmax):
    if not _is_int(p.lam):
        return None
    lam = round(p.lam)
    out = np.zeros(dmax + 1)
    for d in range(lam, dmax + 1):
        out[d] = p.mu ** (d - lam) / math.factorial(d - lam)
    return out


def _hyp_expansion(p, dmax):
    out = np.zeros(dmax + 1)
    out[0] = 1.0
    for d in range(1, dmax + 1):
        out[d] = out[d - 1] * (p.mu + d - 1) / d
    return out


def _fs_expansion(p, dmax):
    out = np.zeros(dmax + 1)
    out[0] = 1.0
    for d in range(1, dmax + 1):
        out[d] = out[d - 1] * (p.mu - d + 1) / d
    return out


def _case7_expansion(p, dmax):
    half = p.mu * p.lam / 2.0
    if not (_is_int(p.lam) and _is_int(half)):
        return None
    lam, half = round(p.lam), round(half)
    out = np.zeros(dmax + 1)
    c = 1.0
    i = 0
    while half + (lam + 1) * i <= dmax:
        out[half + (lam + 1) * i] = c
        c *= (p.mu + i) * p.xi / (i + 1)
        i += 1
    return out


_REGISTRY: dict[FamilyId, _Family] = {}


def _register(fam: _Family):
    _REGISTRY[fam.id] = fam
    return fam


_register(_Family(
    id=FamilyId.FLAT,
    required=(),
    defaults={"mu": 1.0},
    make_tree=_flat_tree,
    domain=lambda p: (0.0, INF),
    profile_ab=lambda p: (0.0, 0.0),
    y_of_t=lambda p, t: p.mu * np.exp(t),
    t_interval=lambda p: (-INF, INF),
    y_interval=lambda p: (0.0, INF),
    convergence=lambda p, m, d, n: _conv_cert(expo0=float(d + n - 1)),
    expansion=_flat_expansion,
    y_of_r=lambda p, r: p.mu * r,
    w_of_r=lambda p, r: p.mu * np.ones_like(np.asarray(r, dtype=float)),
    description="flat metric on C^n",
))

_register(_Family(
    id=FamilyId.SIMANCA,
    required=(),
    defaults={"lam": 1.0, "mu": 1.0},
    make_tree=_simanca_tree,
    domain=lambda p: (0.0, INF),
    profile_ab=lambda p: (0.0, -p.lam),
    y_of_t=lambda p, t: p.mu * np.exp(t) + p.lam,
    t_interval=lambda p: (-INF, INF),
    y_interval=lambda p: (p.lam, INF),
    convergence=lambda p, m, d, n: _conv_cert(expo0=float(d - m * p.lam)),
    expansion=_simanca_expansion,
    y_of_r=lambda p, r: p.mu * r + p.lam,
    w_of_r=lambda p, r: p.mu * np.ones_like(np.asarray(r, dtype=float)),
    description="scalar-flat metric on the blow-up of C^2 (λ=μ=1: r + log r)",
))

_register(_Family(
    id=FamilyId.A03,
    required=(),
    defaults={"lam": 1.0, "mu": 1.0},
    make_tree=_a03_tree,
    domain=lambda p: (p.lam / p.mu, INF),
    profile_ab=lambda p: (0.0, p.lam),
    y_of_t=lambda p, t: p.mu * np.exp(t) - p.lam,
    t_interval=lambda p: (math.log(p.lam / p.mu), INF),
    y_interval=lambda p: (0.0, INF),
    convergence=lambda p, m, d, n: None,
    expansion=None,
    y_of_r=lambda p, r: p.mu * r - p.lam,
    w_of_r=lambda p, r: p.mu * np.ones_like(np.asarray(r, dtype=float)),
    description="scalar-flat family with y→0 at the inner boundary",
))

_register(_Family(
    id=FamilyId.FUBINI_STUDY,
    required=(),
    defaults={"mu": 1.0},
    make_tree=_fs_tree,
    domain=lambda p: (0.0, INF),
    profile_ab=lambda p: (-1.0 / p.mu, 0.0),
    y_of_t=lambda p, t: p.mu / (1.0 + np.exp(-t)),
    t_interval=lambda p: (-INF, INF),
    y_interval=lambda p: (0.0, p.mu),
    convergence=lambda p, m, d, n: _conv_cert(
        expo0=float(d + n - 1), expo_inf=float(d - m * p.mu - 2.0)),
    expansion=_fs_expansion,
    y_of_r=lambda p, r: p.mu * r / (1.0 + r),
    w_of_r=lambda p, r: p.mu / (1.0 + r) ** 2,
    description="Fubini-Study metric (multiple μ)",
))

_register(_Family(
    id=FamilyId.HYPERBOLIC,
    required=(),
    defaults={"mu": 1.0},
    make_tree=_hyp_tree,
    domain=lambda p: (0.0, 1.0),
    profile_ab=lambda p: (1.0 / p.mu, 0.0),
    y_of_t=lambda p, t: p.mu / (np.exp(-t) - 1.0),
    t_interval=lambda p: (-INF, 0.0),
    y_interval=lambda p: (0.0, INF),
    convergence=lambda p, m, d, n: _conv_cert(
        expo0=float(d + n - 1), expo_gap=float(m * p.mu - (n + 1))),
    expansion=_hyp_expansion,
    y_of_r=lambda p, r: p.mu * r / (1.0 - r),
    w_of_r=lambda p, r: p.mu / (1.0 - r) ** 2,
    description="hyperbolic metric (multiple μ)",
))

_register(_Family(
    id=FamilyId.CASE11A,
    required=("lam",),
    defaults={"mu": 1.0, "kappa": 0.0},
    make_tree=_case11a_tree,
    domain=lambda p: tuple(math.exp(t) for t in _case11a_t_interval(p)),
    profile_ab=lambda p: (1.0 / p.mu, p.mu * (0.25 + p.lam ** 2)),
    y_of_t=lambda p, t: p.mu * (p.lam * np.tan(p.lam * t + p.kappa) - 0.5),
    t_interval=_case11a_t_interval,
    y_interval=lambda p: (0.0, INF),
    convergence=lambda p, m, d, n: _conv_cert(expo_gap=float(m * p.mu - (n + 1))),
    expansion=None,
    y_of_r=lambda p, r: p.mu * (p.lam * np.tan(p.lam * np.log(r) + p.kappa) - 0.5),
    w_of_r=lambda p, r: p.mu * p.lam ** 2
    / (r * np.cos(p.lam * np.log(r) + p.kappa) ** 2),
    description="no real ψ-roots; tan-type profile",
))

_register(_Family(
    id=FamilyId.CASE6,
    required=("zeta",),
    defaults={"mu": 1.0, "xi": 1.0},
    make_tree=_case6_tree,
    domain=_case6_domain,
    profile_ab=lambda p: (1.0 / p.mu, p.mu * (1.0 - p.zeta ** 2) / 4.0),
    y_of_t=lambda p, t: p.mu * p.zeta * p.xi * np.exp(p.zeta * t)
    / (1.0 - p.xi * np.exp(p.zeta * t)) - p.mu * (1.0 - p.zeta) / 2.0,
    t_interval=lambda p: (math.log((1.0 - p.zeta) / ((1.0 + p.zeta) * p.xi)) / p.zeta,
                          -math.log(p.xi) / p.zeta),
    y_interval=lambda p: (0.0, INF),
    convergence=lambda p, m, d, n: _conv_cert(expo_gap=float(m * p.mu - (n + 1))),
    expansion=None,
    y_of_r=lambda p, r: p.mu * p.zeta * p.xi * r ** p.zeta
    / (1.0 - p.xi * r ** p.zeta) - p.mu * (1.0 - p.zeta) / 2.0,
    w_of_r=lambda p, r: p.mu * p.zeta ** 2 * p.xi * r ** (p.zeta - 1.0)
    / (1.0 - p.xi * r ** p.zeta) ** 2,
    description="two negative ψ-roots",
))

_register(_Family(
    id=FamilyId.CASE7,
    required=("lam",),
    defaults={"mu": 1.0, "xi": 1.0},
    make_tree=_case7_tree,
    domain=lambda p: (0.0, (1.0 / p.xi) ** (1.0 / (p.lam + 1.0))),
    profile_ab=lambda p: (1.0 / p.mu, -p.mu * p.lam * (p.lam + 2.0) / 4.0),
    y_of_t=lambda p, t: p.mu * (p.lam + 1.0) * p.xi * np.exp((p.lam + 1.0) * t)
    / (1.0 - p.xi * np.exp((p.lam + 1.0) * t)) + p.mu * p.lam / 2.0,
    t_interval=lambda p: (-INF, -math.log(p.xi) / (p.lam + 1.0)),
    y_interval=lambda p: (p.mu * p.lam / 2.0, INF),
    convergence=lambda p, m, d, n: _conv_cert(
        expo0=float(d + p.lam - m * p.mu * p.lam / 2.0),
        expo_gap=float(m * p.mu - (n + 1))),
    expansion=_case7_expansion,
    y_of_r=lambda p, r: p.mu * (p.lam + 1.0) * p.xi * r ** (p.lam + 1.0)
    / (1.0 - p.xi * r ** (p.lam + 1.0)) + p.mu * p.lam / 2.0,
    w_of_r=lambda p, r: p.mu * (p.lam + 1.0) ** 2 * p.xi * r ** p.lam
    / (1.0 - p.xi * r ** (p.lam + 1.0)) ** 2,
    description="one positive, one negative ψ-root; potential r^{μλ/2}/(1−ξ r^{λ+1})^μ",
))

_register(_Family(
    id=FamilyId.CASE8,
    required=("lam",),
    defaults={"mu": 1.0, "xi": 1.0},
    make_tree=_case8_tree,
    domain=lambda p: ((p.xi * p.lam / (p.lam + 2.0)) ** (1.0 / (p.lam + 1.0)), INF),
    profile_ab=lambda p: (-1.0 / p.mu, p.mu * p.lam * (p.lam + 2.0) / 4.0),
    y_of_t=lambda p, t: -p.mu * (p.lam + 1.0) * p.xi * np.exp(-(p.lam + 1.0) * t)
    / (1.0 + p.xi * np.exp(-(p.lam + 1.0) * t)) + p.mu * (p.lam + 2.0) / 2.0,
    t_interval=lambda p: (math.log(p.xi * p.lam / (p.lam + 2.0)) / (p.lam + 1.0), INF),
    y_interval=lambda p: (0.0, p.mu * (p.lam + 2.0) / 2.0),
    convergence=lambda p, m, d, n: _conv_cert(
        expo_inf=float(d - m * p.mu * (p.lam + 2.0) / 2.0 - p.lam - 2.0)),
    expansion=None,
    y_of_r=lambda p, r: -p.mu * (p.lam + 1.0) * p.xi * r ** (-(p.lam + 1.0))
    / (1.0 + p.xi * r ** (-(p.lam + 1.0))) + p.mu * (p.lam + 2.0) / 2.0,
    w_of_r=lambda p, r: p.mu * (p.lam + 1.0) ** 2 * p.xi * r ** (-p.lam - 2.0)
    / (1.0 + p.xi * r ** (-(p.lam + 1.0))) ** 2,
    description="negative and positive ψ-roots, y→0 at inner boundary",
))

_register(_Family(
    id=FamilyId.CASE9,
    required=("zeta",),
    defaults={"mu": 1.0},
    make_tree=_case9_tree,
    domain=lambda p: (0.0, INF),
    profile_ab=lambda p: (-1.0 / p.mu, -p.mu * (1.0 - p.zeta ** 2) / 4.0),
    y_of_t=lambda p, t: -p.mu * p.zeta * np.exp(-p.zeta * t)
    / (1.0 + np.exp(-p.zeta * t)) + p.mu * (1.0 + p.zeta) / 2.0,
    t_interval=lambda p: (-INF, INF),
    y_interval=lambda p: (p.mu * (1.0 - p.zeta) / 2.0, p.mu * (1.0 + p.zeta) / 2.0),
    convergence=lambda p, m, d, n: _conv_cert(
        expo0=float(d - 1.0 + p.zeta - m * p.mu * (1.0 - p.zeta) / 2.0),
        expo_inf=float(d - 1.0 - p.zeta - m * p.mu * (1.0 + p.zeta) / 2.0)),
    expansion=None,
    y_of_r=lambda p, r: -p.mu * p.zeta * r ** (-p.zeta)
    / (1.0 + r ** (-p.zeta)) + p.mu * (1.0 + p.zeta) / 2.0,
    w_of_r=lambda p, r: p.mu * p.zeta ** 2 * r ** (-p.zeta - 1.0)
    / (1.0 + r ** (-p.zeta)) ** 2,
    description="two positive ψ-roots k = μ(1−ζ)/2, l = μ(1+ζ)/2",
))

_register(_Family(
    id=FamilyId.CASE10A,
    required=(),
    defaults={"mu": 1.0, "kappa": 0.0},
    make_tree=_case10a_tree,
    domain=lambda p: (math.exp(p.kappa - 2.0), math.exp(p.kappa)),
    profile_ab=lambda p: (1.0 / p.mu, p.mu / 4.0),
    y_of_t=lambda p, t: p.mu * (1.0 / (p.kappa - t) - 0.5),
    t_interval=lambda p: (p.kappa - 2.0, p.kappa),
    y_interval=lambda p: (0.0, INF),
    convergence=lambda p, m, d, n: _conv_cert(expo_gap=float(m * p.mu - (n + 1))),
    expansion=None,
    y_of_r=lambda p, r: p.mu * (1.0 / (p.kappa - np.log(r)) - 0.5),
    w_of_r=lambda p, r: p.mu / (r * (p.kappa - np.log(r)) ** 2),
    description="double negative ψ-root",
))


def family_registry():
    """The catalog, keyed by FamilyId."""
    return dict(_REGISTRY)


# ---------------------------------------------------------------------------
# Potentials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialPotential:
    """Radial potential Φ(z) = f(r), r = |z|², with exact jet evaluation.

    ``shift`` adds a constant to f (a gauge change: every monomial norm
    scales by e^{-m·shift} and distortion functions are unchanged).
    """

    tree: Expr
    domain: tuple
    n: int = 2
    label: str = "custom"
    family: FamilyId | None = None
    params: FamilyParams | None = None
    shift: float = 0.0
    order_cap: int = DEFAULT_ORDER_CAP

    @cached_property
    def _fp_tree(self):
        return self.tree.diff(0)

    @cached_property
    def _y_tree(self):
        # y(r) = r f'(r)
        return trees.mul(var(0), self._fp_tree)

    @cached_property
    def _yp_tree(self):
        return self._y_tree.diff(0)

    def in_domain(self, r):
        lo, hi = self.domain
        return lo < r < hi

    def _require(self, r):
        if not self.in_domain(r):
            raise OutOfDomain(
                f"r = {r:g} outside domain ({self.domain[0]:g}, {self.domain[1]:g}) of {self.label}")

    def f(self, r):
        return self.tree(r) + self.shift

    def fprime(self, r):
        # catalog families use the factored closed form: the generic
        # derivative tree cancels catastrophically (4/r − 4/r style) at
        # small r for log-containing potentials
        if self.family is not None:
            return _REGISTRY[self.family].y_of_r(self.params, r) / r
        return self._fp_tree(r)

    def y(self, r):
        """y = r f'(r) = F'(log r)."""
        if self.family is not None:
            return _REGISTRY[self.family].y_of_r(self.params, r)
        return self._y_tree(r)

    def rfp_prime(self, r):
        """(r f')'(r) = ψ(y(r))/r, in cancellation-free form for the catalog."""
        if self.family is not None:
            return _REGISTRY[self.family].w_of_r(self.params, r)
        return self._yp_tree(r)

    def det_g(self, r):
        """det of the metric matrix at |z|² = r: f'(rf')' for n=2, (rf')' for n=1."""
        if self.n == 1:
            return self.rfp_prime(r)
        return self.fprime(r) * self.rfp_prime(r)

    def jet(self, r0, order, precision=None, scaled=False):
        """Jet of f at r0 (coefficient k = f⁽ᵏ⁾(r0)/k!, or scaled by r0^k)."""
        if order > self.order_cap:
            raise OrderTooLarge(f"order {order} exceeds cap {self.order_cap}")
        self._require(r0)
        dtype = resolve_dtype(precision)
        j = eval_jet1(self.tree, r0, order, dtype=dtype, scaled=scaled)
        if self.shift:
            j = j + self.shift
        return Jet(j.coef, base_point=r0)

    def jet2(self, r0, orders):
        """Bivariate jet of Φ(x1,x2) = f(x1+x2) at (r0, 0)."""
        self._require(r0)
        fj = self.jet(r0, orders[0] + orders[1])
        return radial_jet2(fj, orders, (r0, 0.0))

    def shifted(self, c):
        return replace(self, shift=self.shift + c, label=f"{self.label}+const")

    def convergence(self, m, d):
        """None if the degree-d weighted norm converges, else a Divergence."""
        if self.family is None:
            return None
        return _REGISTRY[self.family].convergence(self.params, m, d, self.n)

    def expansion_coefficients(self, dmax):
        """Taylor coefficients of e^{Φ} in r up to degree dmax, or None."""
        if self.family is None:
            return None
        fn = _REGISTRY[self.family].expansion
        if fn is None:
            return None
        coeffs = fn(self.params, dmax)
        if coeffs is None:
            return None
        return np.asarray(coeffs, dtype=float) * math.exp(self.shift)

    def interior_grid(self, count=10, spread=0.9):
        """Deterministic grid of in-domain points for sampling invariants."""
        lo, hi = self.domain
        if math.isinf(hi):
            if lo == 0.0:
                return np.geomspace(0.1, 10.0, count)
            return lo * (1.0 + np.geomspace(0.05, 20.0, count))
        if lo == 0.0:
            return hi * np.linspace(0.05, spread, count)
        q = np.linspace(0.05, spread, count)
        return lo + (hi - lo) * q

    def to_json(self):
        out = {"n": self.n, "label": self.label, "shift": self.shift,
               "domain": [self.domain[0],
                          None if math.isinf(self.domain[1]) else self.domain[1]]}
        if self.family is not None:
            out["family"] = self.family.value
            out["params"] = self.params.to_json()
        else:
            out["custom"] = self.tree.to_json()
        return out

    @classmethod
    def from_json(cls, d):
        if "family" in d:
            pot = family_potential(d["family"], FamilyParams.from_json(d.get("params", {})),
                                   n=d.get("n", 2))
            if d.get("shift"):
                pot = pot.shifted(d["shift"])
            return pot
        dom = d.get("domain", [0.0, None])
        domain = (float(dom[0]), INF if dom[1] is None else float(dom[1]))
        return cls(tree=expr_from_json(d["custom"]), domain=domain, n=d.get("n", 2),
                   label=d.get("label", "custom"), shift=d.get("shift", 0.0))


def family_potential(family, params=None, n=2) -> RadialPotential:
    """Closed-form catalog potential with the family's maximal domain.

    Raises UnknownFamily for unrecognized tags and ParamOutOfRange when a
    parameter violates its range constraint.
    """
    fid = family_id(family)
    fam = _REGISTRY[fid]
    p = _with_defaults(fam, params)
    if n not in (1, 2):
        raise ParamOutOfRange("n must be 1 or 2")
    return RadialPotential(
        tree=fam.make_tree(p),
        domain=fam.domain(p),
        n=n,
        label=fid.value,
        family=fid,
        params=p,
    )


def jet_radial(pot: RadialPotential, r0, order, precision=None) -> Jet:
    """Taylor coefficients of f at r0 up to the requested order."""
    return pot.jet(r0, order, precision=precision)


# ---------------------------------------------------------------------------
# Reinhardt potentials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReinhardtPotential:
    """Potential Φ(|z₁|², |z₂|²) on a Reinhardt domain in C².

    The domain is { 0 < x1 < x1_hi, 0 < x2 < x2_upper(x1) }.  ``conv_gap``
    gives the boundary exponent of e^{-mΦ}·det G at x2 → x2_upper (the norm
    integral converges iff that exponent > -1); None means unknown and the
    quadrature engine must fend for itself.
    """

    tree: Expr
    x1_hi: float
    x2_upper: Expr
    n: int = 2
    label: str = "custom-reinhardt"
    p: float | None = None
    shift: float = 0.0

    @cached_property
    def _d1(self):
        return self.tree.diff(0)

    @cached_property
    def _d2(self):
        return self.tree.diff(1)

    @cached_property
    def _d11(self):
        return self._d1.diff(0)

    @cached_property
    def _d12(self):
        return self._d1.diff(1)

    @cached_property
    def _d22(self):
        return self._d2.diff(1)

    def in_domain(self, x1, x2):
        return 0.0 < x1 < self.x1_hi and 0.0 < x2 < self.x2_upper(x1)

    def _require(self, x1, x2):
        # the axes x_i = 0 (points with z_i = 0) count as interior
        if not (0.0 <= x1 < self.x1_hi and 0.0 <= x2 < self.x2_upper(x1)):
            raise OutOfDomain(f"({x1:g}, {x2:g}) outside Reinhardt domain of {self.label}")

    def phi(self, x1, x2):
        return self.tree(x1, x2) + self.shift

    def partials(self, x1, x2):
        """(Φ₁, Φ₂, Φ₁₁, Φ₁₂, Φ₂₂) at the point."""
        return (self._d1(x1, x2), self._d2(x1, x2),
                self._d11(x1, x2), self._d12(x1, x2), self._d22(x1, x2))

    def det_g(self, x1, x2):
        """det(∂²Φ/∂z_i∂z̄_j) = (Φ₁+x₁Φ₁₁)(Φ₂+x₂Φ₂₂) − x₁x₂Φ₁₂²."""
        p1, p2, p11, p12, p22 = self.partials(x1, x2)
        return (p1 + x1 * p11) * (p2 + x2 * p22) - x1 * x2 * p12 ** 2

    def log_det_g(self, x1, x2):
        """log det G, boundary-safe.

        For the p-domain det G = p(1−x₁)^{2p−2} e^{3Φ} exactly, which stays
        finite in log scale where the direct product overflows near the
        x₂-boundary; custom trees fall back to log of the direct value.
        """
        if self.p is not None:
            return (math.log(self.p) + (2.0 * self.p - 2.0) * np.log1p(-np.asarray(x1))
                    + 3.0 * self.tree(x1, x2))
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return np.log(self.det_g(x1, x2))

    def jet2(self, point, orders):
        self._require(*point)
        j = eval_jet2(self.tree, point, orders)
        if self.shift:
            j = j + self.shift
        return j

    def convergence(self, m, index):
        """Divergence certificate for the (j, k) norm at weight m, or None."""
        if self.p is None:
            return None
        j, k = index
        # e^{-mΦ} det G ~ gap^{m-3} at the x2-boundary; x1→1 exponent from the
        # Beta closed form B(j+1, p(k+m)-1).
        if m - (self.n + 1) <= -1.0:
            return Divergence("boundary", float(m - (self.n + 1)))
        if self.p * (k + m) - 2.0 <= -1.0:
            return Divergence("x1->1", float(self.p * (k + m) - 2.0))
        return None

    def shifted(self, c):
        return replace(self, shift=self.shift + c, label=f"{self.label}+const")

    def to_json(self):
        return {"n": self.n, "label": self.label, "p": self.p, "shift": self.shift,
                "x1_hi": self.x1_hi, "custom": self.tree.to_json(),
                "x2_upper": self.x2_upper.to_json()}

    @classmethod
    def from_json(cls, d):
        if d.get("p") is not None:
            pot = pdomain_potential(d["p"])
            if d.get("shift"):
                pot = pot.shifted(d["shift"])
            return pot
        return cls(tree=expr_from_json(d["custom"]), x1_hi=float(d["x1_hi"]),
                   x2_upper=expr_from_json(d["x2_upper"]), n=d.get("n", 2),
                   label=d.get("label", "custom-reinhardt"), shift=d.get("shift", 0.0))


def pdomain_potential(p) -> ReinhardtPotential:
    """Φ = −log[(1−x₁)^p − x₂] on x₂ < (1−x₁)^p, x₁ < 1 (p > 0).

    For p = 1 this is the complex hyperbolic plane (unit ball in C²).
    """
    p = float(p)
    if not p > 0:
        raise ParamOutOfRange("p must be > 0")
    x1, x2 = var(0), var(1)
    gap = trees.sub(trees.powc(trees.sub(const(1.0), x1), p), x2)
    return ReinhardtPotential(
        tree=trees.neg(trees.log(gap)),
        x1_hi=1.0,
        x2_upper=trees.powc(trees.sub(const(1.0), var(0)), p),
        n=2,
        label=f"pdomain(p={p:g})",
        p=p,
    )


def pdomain_c(pot_or_p, x1, x2):
    """The coefficient function c(z) = (1−1/p)(1 − x₂/(1−x₁)^p) of the p-domain."""
    p = pot_or_p.p if isinstance(pot_or_p, ReinhardtPotential) else float(pot_or_p)
    return (1.0 - 1.0 / p) * (1.0 - x2 / (1.0 - x1) ** p)


def radial_as_reinhardt(pot: RadialPotential) -> ReinhardtPotential:
    """View a radial potential on (0, r_hi) as a Reinhardt potential in (x₁, x₂)."""
    if pot.domain[0] != 0.0:
        raise OutOfDomain("only radial potentials with inner radius 0 embed as Reinhardt")
    r_hi = pot.domain[1]
    phi = _subst_sum(pot.tree)
    return ReinhardtPotential(
        tree=phi, x1_hi=r_hi if r_hi is not INF else INF,
        x2_upper=trees.sub(const(r_hi), var(0)) if not math.isinf(r_hi) else const(INF),
        n=pot.n, label=pot.label, shift=pot.shift,
    )


def _subst_sum(tree: Expr) -> Expr:
    """Substitute r -> x1 + x2 in a one-variable tree."""
    if isinstance(tree, trees.Var):
        return trees.add(var(0), var(1))
    if isinstance(tree, trees.Const):
        return tree
    if isinstance(tree, trees.Pow):
        return trees.Pow(_subst_sum(tree.a), tree.exponent)
    kids = [_subst_sum(getattr(tree, k)) for k in ("a", "b") if hasattr(tree, k)]
    return type(tree)(*kids)
