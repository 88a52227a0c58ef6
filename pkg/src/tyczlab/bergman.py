"""Weighted monomial norms, reproducing kernels and distortion functions.

For a potential Φ with metric form ω = (i/2π)∂∂̄Φ, the weighted space at
integer level m ≥ 1 is the set of holomorphic functions with

    ‖s‖²_m = ∫ e^{-mΦ} |s|² ωⁿ/n!  <  ∞ .

On Reinhardt domains the monomials z₁ʲz₂ᵏ are orthogonal, so everything
reduces to one- or two-dimensional integrals.  For a radial potential f(r)
the degree-d data is

    I_m(d) = ∫ r^{d+1} e^{-m f} f'(rf')' dr          (n = 2)
    I_m(j) = ∫ r^{j}   e^{-m f} (rf')'  dr           (n = 1)

with monomial norm N(j,k) = j!k!/(d+1)! · I_m(d), d = j+k, and kernel-sum
block Σ_{j+k=d} x₁ʲx₂ᵏ/N(j,k) = (d+1) rᵈ / I_m(d).  The distortion function
is T(z) = e^{-mΦ(z)} Σ x₁ʲx₂ᵏ/N(j,k), summed by total degree with a
geometric-ratio tail bound.

All radial integrals run in log scale (shifted by the integrand's peak), so
degrees in the many hundreds and weights e^{-m f} spanning thousands of
e-folds are routine.  Convergence at the endpoints is decided analytically
from the catalog's exponent tables, never inferred from quadrature blow-up;
the quadrature itself is adaptive Gauss–Kronrod in s = log r, plus a
tanh-sinh × Gauss–Legendre tensor rule for genuinely 2-D Reinhardt norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.special import betaln, gammaln

from .errors import (
    EmptySpace,
    IllConditioned,
    NoConvergence,
    OutOfDomain,
    ParamOutOfRange,
    QuadratureFailure,
)
from .potentials import (
    Divergence,
    FamilyId,
    RadialPotential,
    ReinhardtPotential,
    family_id,
)

DEFAULT_TOL = 1e-10
DEFAULT_DEGREE_CAP = 64
HARD_DEGREE_CAP = 20000


def _require_level(m):
    if isinstance(m, float) and not m.is_integer():
        raise ParamOutOfRange(f"m must be an integer >= 1, got {m!r}")
    mi = int(m)
    if mi < 1:
        raise ParamOutOfRange(f"m must be an integer >= 1, got {m!r}")
    return mi


# ---------------------------------------------------------------------------
# Radial norm integrals, log scale
# ---------------------------------------------------------------------------


class RadialNormTable:
    """Caches log I_m(d) for one radial potential and level m."""

    def __init__(self, pot: RadialPotential, m: int, tol: float = DEFAULT_TOL):
        self.pot = pot
        self.m = _require_level(m)
        self.tol = tol
        self._cache: dict[int, float] = {}
        lo, hi = pot.domain
        self.s_lo = -math.inf if lo == 0.0 else math.log(lo)
        self.s_hi = math.inf if math.isinf(hi) else math.log(hi)

    def _log_integrand(self, s, d):
        r = np.exp(s)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            w = self.pot.rfp_prime(r)
            if self.pot.n == 2:
                w = w * self.pot.fprime(r)
            out = (d + self.pot.n) * s - self.m * self.pot.f(r) + np.log(w)
        return np.where(np.isfinite(out), out, -np.inf)

    def convergence(self, d) -> Divergence | None:
        return self.pot.convergence(self.m, d)

    def log_norm_integral(self, d) -> float:
        """log I_m(d); callers check convergence first."""
        if d in self._cache:
            return self._cache[d]
        val = self._compute(d)
        self._cache[d] = val
        return val

    def _compute(self, d):
        g = lambda s: self._log_integrand(s, d)
        a, b, s_peak, g_peak = _bracket_peak(g, self.s_lo, self.s_hi)

        def fn(s):
            return math.exp(min(float(g(s)) - g_peak, 700.0))

        pts = [s_peak] if a < s_peak < b else None
        import warnings

        with np.errstate(over="ignore", invalid="ignore", divide="ignore"), \
                warnings.catch_warnings():
            # our own relative-error gate below supersedes quad's warning
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(fn, a, b, points=pts, limit=400,
                                      epsabs=0.0, epsrel=self.tol * 0.1)
        if not (val > 0.0 and np.isfinite(val)):
            raise QuadratureFailure(
                f"norm integral failed for degree {d} of {self.pot.label} at m={self.m}")
        if err > 100 * self.tol * val:
            raise QuadratureFailure(
                f"norm integral for degree {d} of {self.pot.label} at m={self.m} "
                f"achieved rel. error {err / val:.2e}", achieved=err / val)
        return g_peak + math.log(val)


def _bracket_peak(g, s_lo, s_hi, coarse=200, drop=130.0):
    """Finite [a, b] carrying the mass of exp(g), plus the coarse peak."""
    a0 = s_lo if math.isfinite(s_lo) else -1.0
    b0 = s_hi if math.isfinite(s_hi) else 1.0
    if a0 >= b0:
        a0, b0 = b0 - 2.0, b0
    for _ in range(200):
        s = np.linspace(a0, b0, coarse)
        vals = g(s)
        gmax = float(np.max(vals))
        grew = False
        if not math.isfinite(s_lo) and vals[0] > gmax - drop:
            a0 -= max(1.0, 0.5 * (b0 - a0))
            grew = True
        if not math.isfinite(s_hi) and vals[-1] > gmax - drop:
            b0 += max(1.0, 0.5 * (b0 - a0))
            grew = True
        if not grew:
            break
    s = np.linspace(a0, b0, 4 * coarse)
    vals = g(s)
    k = int(np.argmax(vals))
    gmax = float(vals[k])
    # cut the tails on infinite sides; keep exact finite endpoints (quad never
    # evaluates them, so integrable endpoint singularities are fine)
    idx = np.nonzero(vals > gmax - drop)[0]
    a = s_lo if math.isfinite(s_lo) else float(s[max(idx[0] - 1, 0)])
    b = s_hi if math.isfinite(s_hi) else float(s[min(idx[-1] + 1, len(s) - 1)])
    return a, b, float(s[k]), gmax


# closed Gamma/Beta forms for the families that have them -------------------


def closed_norm_log(pot: RadialPotential, m, d) -> float | None:
    """log I_m(d) in closed Gamma/Beta form, or None if no closed form exists."""
    if pot.family is None:
        return None
    m = _require_level(m)
    p = pot.params
    n = pot.n
    fam = pot.family
    shift = -m * pot.shift
    if fam == FamilyId.FLAT:
        mm = m * p.mu
        if n == 1:
            return math.log(p.mu) + gammaln(d + 1) - (d + 1) * math.log(mm) + shift
        return 2 * math.log(p.mu) + gammaln(d + 2) - (d + 2) * math.log(mm) + shift
    if fam == FamilyId.SIMANCA:
        lam, mu = p.lam, p.mu
        mm = m * mu
        if d - m * lam <= -1:
            return None
        if n == 1:
            return (math.log(mu) + gammaln(d - m * lam + 1)
                    - (d - m * lam + 1) * math.log(mm) + shift)
        t1 = math.log(mu) + gammaln(d + 2 - m * lam) - (d + 2 - m * lam) * math.log(mm)
        t2 = math.log(lam) + gammaln(d + 1 - m * lam) - (d + 1 - m * lam) * math.log(mm)
        return math.log(mu) + np.logaddexp(t1, t2) + shift
    if fam == FamilyId.HYPERBOLIC:
        mu = p.mu
        if m * mu <= n:
            return None
        if n == 1:
            return math.log(mu) + betaln(d + 1, m * mu - 1) + shift
        return 2 * math.log(mu) + betaln(d + 2, m * mu - 2) + shift
    if fam == FamilyId.FUBINI_STUDY:
        mu = p.mu
        if d >= m * mu + 1:
            return None
        if n == 1:
            return math.log(mu) + betaln(d + 1, m * mu + 1 - d) + shift
        return 2 * math.log(mu) + betaln(d + 2, m * mu + 1 - d) + shift
    if fam == FamilyId.CASE7 and n == 2:
        lam, mu, xi = p.lam, p.mu, p.xi
        if m * mu <= 2:
            return None
        s = (d - m * mu * lam / 2.0) / (lam + 1.0)
        if s <= -1:
            return None
        body = np.logaddexp(math.log(lam) + betaln(s + 1, m * mu - 2),
                            math.log(lam + 2) + betaln(s + 2, m * mu - 2))
        return (2 * math.log(mu) + math.log(lam + 1) - math.log(2.0)
                - s * math.log(xi) + body + shift)
    return None


def _angular_log(j, k):
    """log[j!k!/(j+k+1)!], the angular factor of the n = 2 norm reduction."""
    return gammaln(j + 1) + gammaln(k + 1) - gammaln(j + k + 2)


# ---------------------------------------------------------------------------
# Public norm interface
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialNorm:
    """‖z₁ʲz₂ᵏ‖² at level m (or ‖zʲ‖² for n = 1), or its divergence certificate."""

    index: tuple
    m: int
    value: float | None
    log_value: float | None
    divergent: Divergence | None
    method: str

    @property
    def is_divergent(self):
        return self.divergent is not None

    def to_json(self):
        return {"index": list(self.index), "m": self.m, "value": self.value,
                "log_value": self.log_value, "method": self.method,
                "divergent": None if self.divergent is None else str(self.divergent)}


_RADIAL_TABLES: dict[tuple, RadialNormTable] = {}
_REINHARDT_TABLES: dict[tuple, "ReinhardtNormTable"] = {}


def _radial_table(pot, m, tol=DEFAULT_TOL) -> RadialNormTable:
    key = (id(pot), m)
    tab = _RADIAL_TABLES.get(key)
    if tab is None or tab.pot is not pot:
        tab = RadialNormTable(pot, m, tol)
        _RADIAL_TABLES[key] = tab
    return tab


def monomial_norm(pot, m, index, tol=DEFAULT_TOL, method="auto") -> MonomialNorm:
    """Weighted norm of a monomial, by quadrature or Gamma/Beta closed form.

    ``method``: 'quadrature' (default used by 'auto') or 'closed' to demand
    the Gamma/Beta form.  Divergent norms come back with the analytic
    certificate (endpoint and integrand exponent) instead of a value.
    """
    m = _require_level(m)
    if isinstance(pot, ReinhardtPotential):
        j, k = int(index[0]), int(index[1])
        if j < 0 or k < 0:
            raise ParamOutOfRange("monomial indices must be nonnegative")
        cert = pot.convergence(m, (j, k))
        if cert is not None:
            return MonomialNorm((j, k), m, None, None, cert, "analytic")
        tab = _reinhardt_table(pot, m, max(j + k, 32), tol)
        val = tab.norm(j, k)
        return MonomialNorm((j, k), m, float(val), math.log(val), None, "quadrature")

    if pot.n == 1:
        d = int(index if np.isscalar(index) else index[0])
        idx = (d,)
        ang = 0.0
    else:
        j, k = int(index[0]), int(index[1])
        d = j + k
        idx = (j, k)
        ang = _angular_log(j, k)
    if any(i < 0 for i in idx):
        raise ParamOutOfRange("monomial indices must be nonnegative")
    cert = pot.convergence(m, d)
    if cert is not None:
        return MonomialNorm(idx, m, None, None, cert, "analytic")
    if method == "closed":
        log_i = closed_norm_log(pot, m, d)
        if log_i is None:
            raise ParamOutOfRange(f"no closed-form norm for {pot.label}")
        used = ("gamma_closed_form"
                if pot.family in (FamilyId.FLAT, FamilyId.SIMANCA)
                else "beta_closed_form")
    else:
        log_i = _radial_table(pot, m, tol).log_norm_integral(d)
        used = "quadrature"
    lv = ang + log_i
    return MonomialNorm(idx, m, float(np.exp(lv)) if lv < 700 else math.inf,
                        float(lv), None, used)


def norm_an0v_closed(params, index) -> float | Divergence:
    """Closed Beta-form norm ‖z₁ʲz₂ᵏ‖² for the case7 potential at m = 1.

    With s = (j+k − μλ/2)/(λ+1):

        N = (μ²(λ+1)/2)·ξ^{−s}·[j!k!/(j+k+1)!]·[λ B(s+1, μ−2) + (λ+2) B(s+2, μ−2)]

    finite iff μ > 2 and s > −1 (equivalently j+k > μλ/2 − (λ+1)); otherwise
    the divergence certificate is returned.
    """
    lam = params.lam
    mu = params.mu
    xi = params.xi if params.xi is not None else 1.0
    j, k = index
    d = j + k
    s = (d - mu * lam / 2.0) / (lam + 1.0)
    if mu <= 2:
        return Divergence("boundary", float(mu - 3))
    if s <= -1:
        return Divergence("r->0", float(d + lam - mu * lam / 2.0))
    lv = (2 * math.log(mu) + math.log(lam + 1) - math.log(2.0) - s * math.log(xi)
          + np.logaddexp(math.log(lam) + betaln(s + 1, mu - 2),
                         math.log(lam + 2) + betaln(s + 2, mu - 2))
          + _angular_log(j, k))
    return float(np.exp(lv))


# ---------------------------------------------------------------------------
# Reinhardt (2-D) norm tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _tanh_sinh_nodes(levels=7):
    """tanh-sinh nodes/weights on (0, 1), endpoint-safe."""
    h = 2.0 ** -levels
    kmax = int(math.ceil(6.5 / h))
    t = h * np.arange(-kmax, kmax + 1)
    with np.errstate(over="ignore"):
        u = np.tanh(0.5 * math.pi * np.sinh(t))
        w = 0.5 * math.pi * np.cosh(t) / np.cosh(0.5 * math.pi * np.sinh(t)) ** 2 * h
    x = 0.5 * (u + 1.0)
    keep = (x > 0.0) & (x < 1.0) & (w > 1e-280)
    return x[keep], 0.5 * w[keep]


class ReinhardtNormTable:
    """Norms N(j, k) for a Reinhardt potential by tensor quadrature.

    Inner variable u = x₂/x₂_upper(x₁) ∈ (0,1) by Gauss–Legendre (the weight
    (1−u)^{m-n-1} is polynomial for integer m > n), outer x₁ by tanh-sinh
    (handles the (1−x₁)^α endpoint with α ∈ (−1, 0) that occurs for p < 1).
    Node weights are assembled in log scale so boundary overflow in det G
    never contaminates the table.
    """

    def __init__(self, pot: ReinhardtPotential, m: int, deg_cap: int,
                 tol: float = DEFAULT_TOL, n_gl: int = 96):
        self.pot = pot
        self.m = _require_level(m)
        self.deg_cap = int(deg_cap)
        x1, w1 = _tanh_sinh_nodes()
        x1 = x1 * pot.x1_hi
        w1 = w1 * pot.x1_hi
        u, wu = np.polynomial.legendre.leggauss(n_gl)
        u = 0.5 * (u + 1.0)
        wu = 0.5 * wu
        upper = pot.x2_upper(x1)
        X1 = np.broadcast_to(x1[:, None], (len(x1), n_gl))
        X2 = upper[:, None] * u[None, :]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            logw = (-self.m * (pot.tree(X1, X2) + pot.shift)
                    + pot.log_det_g(X1, X2)
                    + np.log(upper[:, None]) + np.log(w1[:, None]) + np.log(wu[None, :]))
        logw = np.where(np.isfinite(logw), logw, -np.inf)
        W = np.exp(logw)
        K = self.deg_cap
        VU = u[None, :] ** np.arange(K + 1)[:, None]            # (K+1, nu)
        M = W @ VU.T                                            # (nx, K+1)
        V1 = x1[None, :] ** np.arange(K + 1)[:, None]           # (K+1, nx)
        self._N = np.empty((K + 1, K + 1))
        Pk = np.ones_like(upper)
        for k in range(K + 1):
            self._N[:, k] = V1 @ (Pk * M[:, k])
            Pk = Pk * upper

    def norm(self, j, k):
        if j > self.deg_cap or k > self.deg_cap:
            raise ParamOutOfRange("degree beyond table cap")
        return self._N[j, k]


def _reinhardt_table(pot, m, deg_cap, tol=DEFAULT_TOL) -> ReinhardtNormTable:
    key = (id(pot), m)
    tab = _REINHARDT_TABLES.get(key)
    if tab is None or tab.pot is not pot or tab.deg_cap < deg_cap:
        tab = ReinhardtNormTable(pot, m, deg_cap, tol)
        _REINHARDT_TABLES[key] = tab
    return tab


# ---------------------------------------------------------------------------
# Distortion function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistortionValue:
    value: float
    truncation_degree: int
    tail_bound: float


@dataclass(frozen=True)
class DistortionSeries:
    """Sampled T_m(point) over an m-grid, with truncation diagnostics."""

    point: tuple
    m_grid: tuple
    values: tuple
    truncation_degree: int
    tail_bound: float

    def to_json(self):
        return {"point": list(self.point), "m_grid": list(self.m_grid),
                "values": list(self.values),
                "truncation_degree": self.truncation_degree,
                "tail_bound": self.tail_bound}


def _radial_distortion(pot, m, r, tol, degree_cap, method="auto") -> DistortionValue:
    table = _radial_table(pot, m, tol)
    mf = m * pot.f(r)
    lr = math.log(r)
    total = 0.0
    terms: list[float] = []
    d = 0
    d_last = -1
    finite_dim = False
    while d <= HARD_DEGREE_CAP:
        cert = table.convergence(d)
        if cert is not None:
            if cert.endpoint == "r->inf":
                finite_dim = True  # decay endpoint only worsens with degree
                break
            if cert.endpoint == "boundary":
                raise EmptySpace(
                    f"every norm of {pot.label} diverges at m={m}: {cert}")
            d += 1  # an r->0 obstruction relaxes as the degree grows
            continue
        log_i = closed_norm_log(pot, m, d) if method == "closed" else None
        if log_i is None:
            log_i = table.log_norm_integral(d)
        term_log = (math.log(d + 1) if pot.n == 2 else 0.0) + d * lr - log_i - mf
        term = math.exp(term_log) if term_log < 700 else math.inf
        total += term
        terms.append(term)
        d_last = d
        if (len(terms) >= 4 and total > 0
                and terms[-1] < tol * total
                and terms[-1] < terms[-2] < terms[-3] < terms[-4]):
            break
        d += 1
    else:
        raise NoConvergence(
            f"kernel sum of {pot.label} not converged by degree {HARD_DEGREE_CAP} "
            f"(m={m}, r={r:g})")
    if total == 0.0 or not terms:
        raise EmptySpace(f"no convergent monomial norms for {pot.label} at m={m}")
    if not math.isfinite(total):
        raise NoConvergence(f"kernel sum of {pot.label} overflowed (m={m}, r={r:g})")
    if finite_dim:
        tail = 0.0
    else:
        rho = terms[-1] / terms[-2] if len(terms) >= 2 and terms[-2] > 0 else 0.0
        rho = min(rho, 0.999999)
        tail = terms[-1] * rho / (1.0 - rho) / total
    return DistortionValue(total, d_last, tail)


def _reinhardt_distortion(pot, m, point, tol, degree_cap) -> DistortionValue:
    x1, x2 = float(point[0]), float(point[1])
    pot._require(x1, x2)
    cert = pot.convergence(m, (0, 0))
    if cert is not None and cert.endpoint == "boundary":
        raise EmptySpace(f"every norm of {pot.label} diverges at m={m}: {cert}")
    cap = max(degree_cap, 24)
    while cap <= 4096:
        tab = _reinhardt_table(pot, m, cap, tol)
        emf = math.exp(-m * pot.phi(x1, x2))
        total = 0.0
        blocks: list[float] = []
        converged_any = False
        for d in range(cap + 1):
            block = 0.0
            for j in range(d + 1):
                k = d - j
                if pot.convergence(m, (j, k)) is not None:
                    continue
                converged_any = True
                block += (x1 ** j) * (x2 ** k) / tab.norm(j, k)
            blocks.append(block)
            total += block
            if (d >= 6 and total > 0 and blocks[-1] < tol * total
                    and blocks[-2] < tol * total and blocks[-1] <= blocks[-2]):
                rho = blocks[-1] / blocks[-2] if blocks[-2] > 0 else 0.0
                tail = blocks[-1] * rho / (1 - rho) / total if rho < 1 else math.inf
                return DistortionValue(emf * total, d, tail)
        if not converged_any:
            raise EmptySpace(f"no convergent monomial norms for {pot.label} at m={m}")
        cap *= 2
    raise NoConvergence(
        f"2-D kernel sum not converged by degree 4096 for {pot.label} (m={m})")


def distortion(pot, m, point, tol=DEFAULT_TOL, degree_cap=DEFAULT_DEGREE_CAP,
               method="auto") -> float:
    """Kempf distortion T_m(point) = e^{-mΦ} · Σ x₁ʲx₂ᵏ/‖z₁ʲz₂ᵏ‖².

    ``point`` is r = |z|² for radial potentials (or an (x₁, x₂) pair) and
    (x₁, x₂) for Reinhardt ones.  Raises EmptySpace when the weighted space
    is trivial and NoConvergence when degree blocks stop decaying.
    """
    m = _require_level(m)
    if isinstance(pot, ReinhardtPotential):
        return _reinhardt_distortion(pot, m, point, tol, degree_cap).value
    r = float(point[0]) + float(point[1]) if isinstance(point, (tuple, list)) else float(point)
    if not pot.in_domain(r):
        raise OutOfDomain(f"r = {r:g} outside domain of {pot.label}")
    return _radial_distortion(pot, m, r, tol, degree_cap, method).value


def distortion_series(pot, m_grid, point, tol=DEFAULT_TOL,
                      degree_cap=DEFAULT_DEGREE_CAP, method="auto") -> DistortionSeries:
    """T_m(point) sampled over an integer m-grid."""
    values = []
    trunc = 0
    tail = 0.0
    for m in m_grid:
        m = _require_level(m)
        if isinstance(pot, ReinhardtPotential):
            dv = _reinhardt_distortion(pot, m, point, tol, degree_cap)
        else:
            r = float(point[0]) + float(point[1]) if isinstance(point, (tuple, list)) \
                else float(point)
            dv = _radial_distortion(pot, m, r, tol, degree_cap, method)
        values.append(dv.value)
        trunc = max(trunc, dv.truncation_degree)
        tail = max(tail, dv.tail_bound)
    pt = tuple(point) if isinstance(point, (tuple, list)) else (float(point),)
    return DistortionSeries(pt, tuple(int(m) for m in m_grid), tuple(values), trunc, tail)


def closed_distortion(family, params, m, n=2):
    """Reference distortion values for the balanced catalog families.

    flat: mⁿ; simanca (λ=μ=1): m²; hyperbolic: Π_{i≤n}(mμ−i)/μⁿ;
    fubini_study: Π_{i≤n}(mμ+i)/μⁿ.  None when no closed form is on record.
    """
    fid = family_id(family)
    mu = params.mu if params is not None and params.mu is not None else 1.0
    if fid == FamilyId.FLAT:
        return float(m) ** n
    if fid == FamilyId.SIMANCA and params.lam == 1.0 and mu == 1.0 and n == 2:
        return float(m) ** 2
    if fid == FamilyId.HYPERBOLIC:
        out = 1.0
        for i in range(1, n + 1):
            out *= (m * mu - i)
        return out / mu ** n
    if fid == FamilyId.FUBINI_STUDY:
        out = 1.0
        for i in range(1, n + 1):
            out *= (m * mu + i)
        return out / mu ** n
    return None


# ---------------------------------------------------------------------------
# Volume / level-zero flag
# ---------------------------------------------------------------------------


def volume(pot) -> float:
    """∫ ωⁿ/n! over the domain; may be inf.

    Radial volumes are exact: ∫ (rf')' dr = y_hi − y_lo for n = 1 and
    ∫ r f'(rf')' dr = ∫ y dy = (y_hi² − y_lo²)/2 for n = 2, with the y-limits
    read off the catalog (or measured near the endpoints for custom trees).
    """
    if isinstance(pot, ReinhardtPotential):
        if pot.p is not None:
            return math.inf  # det G ~ gap^{-3} at the x₂-boundary, never integrable
        x1, w1 = _tanh_sinh_nodes()
        x1 = x1 * pot.x1_hi
        w1 = w1 * pot.x1_hi
        u, wu = np.polynomial.legendre.leggauss(64)
        u = 0.5 * (u + 1.0)
        wu = 0.5 * wu
        upper = pot.x2_upper(x1)
        X1 = np.broadcast_to(x1[:, None], (len(x1), 64))
        X2 = upper[:, None] * u[None, :]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            vals = pot.det_g(X1, X2) * upper[:, None] * w1[:, None] * wu[None, :]
        total = float(np.nansum(vals))
        return math.inf if not np.isfinite(total) or total > 1e100 else total
    if pot.family is not None:
        from .potentials import _REGISTRY

        y_lo, y_hi = _REGISTRY[pot.family].y_interval(pot.params)
    else:
        lo, hi = pot.domain
        r_lo = lo * (1 + 1e-9) if lo > 0 else (hi * 1e-12 if math.isfinite(hi) else 1e-12)
        r_hi = hi * (1 - 1e-9) if math.isfinite(hi) else 1e12
        y_lo, y_hi = pot.y(r_lo), pot.y(r_hi)
        if y_hi > 1e100:
            y_hi = math.inf
    if math.isinf(y_hi):
        return math.inf
    if pot.n == 1:
        return float(y_hi - y_lo)
    return float(0.5 * (y_hi ** 2 - y_lo ** 2))


def t0_flag(pot) -> float:
    """T₀ as a constants-integrability flag: 1/volume if finite, else 0."""
    v = volume(pot)
    return 0.0 if math.isinf(v) else 1.0 / v


# ---------------------------------------------------------------------------
# Polynomial fits in m
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyFitResult:
    """Least-squares fit of T_m against powers of m (negative powers allowed)."""

    basis: tuple
    coefficients: tuple
    residual: float
    cond: float
    finite_expansion: bool
    tol: float

    def coefficient(self, power):
        return self.coefficients[self.basis.index(power)]

    def to_json(self):
        return {"basis": list(self.basis), "coefficients": list(self.coefficients),
                "residual": self.residual, "cond": self.cond,
                "finite_expansion": self.finite_expansion, "tol": self.tol}


def fit_poly_in_m(series: DistortionSeries, basis, tol=1e-7,
                  cond_limit=1e12) -> PolyFitResult:
    """Fit Σ c_s m^s to the series; the residual is taken on held-out points.

    Every third grid point is held out of the fit and only scores the
    residual.  IllConditioned is raised when the scaled design matrix has a
    condition estimate above ``cond_limit``.
    """
    basis = tuple(int(b) for b in basis)
    m = np.asarray(series.m_grid, dtype=float)
    y = np.asarray(series.values, dtype=float)
    if len(m) < len(basis) + 2:
        raise ParamOutOfRange("need |m_grid| >= |basis| + 2 for a meaningful fit")
    hold = np.zeros(len(m), dtype=bool)
    hold[2::3] = True
    if (~hold).sum() < len(basis) + 1:
        hold[:] = False
        hold[-1] = True
    A = np.stack([m ** b for b in basis], axis=1)
    scale = np.linalg.norm(A[~hold], axis=0)
    scale[scale == 0] = 1.0
    As = A / scale
    sv = np.linalg.svd(As[~hold], compute_uv=False)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    if cond > cond_limit:
        raise IllConditioned(
            f"design matrix condition {cond:.2e} over limit {cond_limit:.0e}; rescale basis")
    coef_s, *_ = np.linalg.lstsq(As[~hold], y[~hold], rcond=None)
    coefs = coef_s / scale
    pred = A @ coefs
    resid = float(np.max(np.abs(pred[hold] - y[hold])))
    neg_small = all(abs(coefs[i]) <= tol for i, b in enumerate(basis) if b < 0)
    return PolyFitResult(basis, tuple(float(c) for c in coefs), resid, cond,
                         bool(resid <= tol and neg_small), tol)
