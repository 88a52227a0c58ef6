"""Metric matrix, det(g), curvature invariants and expansion coefficients.

Conventions, pinned by value tests rather than stated anywhere in closed
form: ω = (i/2π)∂∂̄Φ, G_{ij̄} = ∂²Φ/∂z_i∂z̄_j, Ric_{ij̄} = −∂_i∂_j̄ log det G,
scal = G^{ij̄}Ric_{ij̄}, Δ = G^{ij̄}∂_i∂_j̄ (complex Laplacian).  With these,

    a₁ = scal/2,
    a₂ = Δscal/3 + (|R|² − 4|Ric|² + 3 scal²)/24,

match the coefficient of m^{n-1} and m^{n-2} in the distortion functions
computed by the bergman module on every closed-form family (the acceptance
suite cross-checks them numerically).

All derivatives come from bivariate jets of Φ at the point, so Δscal is
exact to rounding: Φ is carried to total order 6, log det G to order 4,
scal as a jet to order 2, then contracted once more.

For a Reinhardt potential at a *real* point z = (√x₁, √x₂), a mixed
holomorphic derivative of an invariant function u(x₁, x₂) reduces to a
combination of x-partials with √x prefactors:

    ∂_i∂_j̄ u           = δ_ij u_i + s_i s_j u_ij
    ∂_i∂_k∂_q̄ u        = (δ_iq s_k + δ_kq s_i) u_ik + s_i s_k s_q u_ikq
    ∂_i∂_k∂_q̄∂_r̄ u    = (δ_iq δ_kr + δ_ir δ_kq) u_ik
                          + (δ_iq s_k s_r + δ_kq s_i s_r) u_ikr
                          + (δ_ir s_k s_q + δ_kr s_i s_q) u_ikq
                          + s_i s_k s_q s_r u_ikqr

with s_i = √x_i.  Radial potentials are evaluated at (r, 0) (lossless by
radial symmetry) and n = 1 has its own scalar reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import JetOrderInsufficient, NotPositiveDefinite, OutOfDomain
from .jets import Jet2
from .potentials import RadialPotential, ReinhardtPotential

_ORDERS = (6, 6)  # rectangular jet window for Φ; total order 6 per the a₂ chain


@dataclass(frozen=True)
class CurvatureReport:
    """Pointwise curvature invariants and the first two expansion coefficients."""

    scal: float
    ric_norm2: float
    riem_norm2: float
    lap_scal: float
    point: tuple
    label: str = ""

    @property
    def a1(self):
        return 0.5 * self.scal

    @property
    def a2(self):
        return (self.lap_scal / 3.0
                + (self.riem_norm2 - 4.0 * self.ric_norm2 + 3.0 * self.scal ** 2) / 24.0)

    def to_json(self):
        return {"label": self.label, "point": list(self.point), "scal": self.scal,
                "ric_norm2": self.ric_norm2, "riem_norm2": self.riem_norm2,
                "lap_scal": self.lap_scal, "a1": self.a1, "a2": self.a2}


def _as_xpoint(pot, point):
    if isinstance(pot, RadialPotential):
        if isinstance(point, (tuple, list, np.ndarray)):
            x1, x2 = float(point[0]), float(point[1])
            r = x1 + x2
            if not pot.in_domain(r):
                raise OutOfDomain(f"r = {r:g} outside domain of {pot.label}")
            return x1, x2
        r = float(point)
        if not pot.in_domain(r):
            raise OutOfDomain(f"r = {r:g} outside domain of {pot.label}")
        return r, 0.0
    x1, x2 = float(point[0]), float(point[1])
    pot._require(x1, x2)
    return x1, x2


def metric_matrix(pot, point):
    """Hermitian metric G_{ij̄} = ∂²Φ/∂z_i∂z̄_j at the point (n×n, real entries).

    Radial potentials take a point r = |z|² (evaluated at z = (√r, 0)) or an
    explicit (x₁, x₂); Reinhardt potentials take (x₁, x₂) = (|z₁|², |z₂|²).
    Raises NotPositiveDefinite when the matrix fails to be one.
    """
    if isinstance(pot, RadialPotential) and pot.n == 1:
        r = float(point)
        if not pot.in_domain(r):
            raise OutOfDomain(f"r = {r:g} outside domain of {pot.label}")
        g = np.array([[pot.rfp_prime(r)]])
    elif isinstance(pot, RadialPotential):
        x1, x2 = _as_xpoint(pot, point)
        r = x1 + x2
        fp = pot.fprime(r)
        fpp = pot.tree.diff(0).diff(0)(r)
        s12 = math.sqrt(x1 * x2)
        g = np.array([[fp + x1 * fpp, s12 * fpp], [s12 * fpp, fp + x2 * fpp]])
    else:
        x1, x2 = _as_xpoint(pot, point)
        p1, p2, p11, p12, p22 = pot.partials(x1, x2)
        s12 = math.sqrt(x1 * x2)
        g = np.array([[p1 + x1 * p11, s12 * p12], [s12 * p12, p2 + x2 * p22]])
    if g[0, 0] <= 0 or np.linalg.det(g) <= 0:
        raise NotPositiveDefinite(f"metric not positive definite at {point!r}")
    return g


def det_g_radial(pot: RadialPotential, r):
    """det of the metric at |z|² = r: f'·(rf')' for n = 2, (rf')' for n = 1."""
    if not pot.in_domain(r):
        raise OutOfDomain(f"r = {r:g} outside domain of {pot.label}")
    return pot.det_g(r)


def _hermitian_contract(a, b, p12, x1, x2, det, w):
    """G^{ij̄} ∂_i∂_j̄ w for an invariant-function jet w (returns a jet)."""
    w1, w2 = w.dx(), w.dy()
    w11, w12, w22 = w1.dx(), w1.dy(), w2.dy()
    x1j, x2j = _coords_like(w, x1, x2)
    term = (b * (w1 + x1j * w11) + a * (w2 + x2j * w22)
            - 2.0 * x1j * x2j * p12 * w12)
    return term / det


def _coords_like(ref: Jet2, x1, x2):
    n, m = ref.coef.shape
    return (Jet2.variable(0, x1, (n - 1, m - 1), ref.base_point),
            Jet2.variable(1, x2, (n - 1, m - 1), ref.base_point))


def _tri(part2, part3, s, a, b, c):
    """∂_a∂_b∂_c̄ Φ at a real point (a, b unbarred, c barred)."""
    out = s[a] * s[b] * s[c] * part3[a][b][c]
    if a == c:
        out += s[b] * part2[a][b]
    if b == c:
        out += s[a] * part2[a][b]
    return out


def _quad(part2, part3, part4, s, i, k, q, r):
    """∂_i∂_k∂_q̄∂_r̄ Φ at a real point."""
    out = s[i] * s[k] * s[q] * s[r] * part4[i][k][q][r]
    if i == q and k == r:
        out += part2[i][k]
    if i == r and k == q:
        out += part2[i][k]
    if i == q:
        out += s[k] * s[r] * part3[i][k][r]
    if k == q:
        out += s[i] * s[r] * part3[i][k][r]
    if i == r:
        out += s[k] * s[q] * part3[i][k][q]
    if k == r:
        out += s[i] * s[q] * part3[i][k][q]
    return out


def _curvature_n2(phi: Jet2, x1, x2, label, point):
    if phi.orders[0] < 6 or phi.orders[1] < 6:
        raise JetOrderInsufficient("curvature needs Φ jets of total order 6")
    x1j, x2j = _coords_like(phi, x1, x2)
    p1, p2 = phi.dx(), phi.dy()
    p11, p12, p22 = p1.dx(), p1.dy(), p2.dy()
    a = p1 + x1j * p11
    b = p2 + x2j * p22
    det = a * b - x1j * x2j * p12 * p12
    if det.value() <= 0 or a.value() <= 0:
        raise NotPositiveDefinite(f"metric not positive definite at {point!r}")
    u = det.log()
    scal = -_hermitian_contract(a, b, p12, x1, x2, det, u)
    lap_scal = _hermitian_contract(a, b, p12, x1, x2, det, scal).value()

    s = (math.sqrt(x1), math.sqrt(x2))
    s12 = s[0] * s[1]
    G = np.array([[a.value(), s12 * p12.value()],
                  [s12 * p12.value(), b.value()]])
    Gi = np.linalg.inv(G)

    u1, u2 = u.dx(), u.dy()
    u11, u12, u22 = u1.dx(), u1.dy(), u2.dy()
    ric = -np.array([
        [u1.value() + x1 * u11.value(), s12 * u12.value()],
        [s12 * u12.value(), u2.value() + x2 * u22.value()],
    ])
    ric_norm2 = float(np.trace((Gi @ ric) @ (Gi @ ric)))

    # x-partial tables of Φ up to order 4 (index = which variable, 0 or 1)
    part2 = [[0.0] * 2 for _ in range(2)]
    part3 = [[[0.0] * 2 for _ in range(2)] for _ in range(2)]
    part4 = [[[[0.0] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
    for i in range(2):
        for j in range(2):
            part2[i][j] = phi.partial((i == 0) + (j == 0), (i == 1) + (j == 1))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                ones = (i == 0) + (j == 0) + (k == 0)
                part3[i][j][k] = phi.partial(ones, 3 - ones)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    ones = (i == 0) + (j == 0) + (k == 0) + (l == 0)
                    part4[i][j][k][l] = phi.partial(ones, 4 - ones)

    R = np.zeros((2, 2, 2, 2))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    acc = -_quad(part2, part3, part4, s, i, k, j, l)
                    for p in range(2):
                        for q in range(2):
                            acc += Gi[p, q] * _tri(part2, part3, s, i, k, q) \
                                * _tri(part2, part3, s, j, l, p)
                    R[i, j, k, l] = acc
    riem_norm2 = float(np.einsum("ijkl,abcd,ib,aj,kd,cl->", R, R, Gi, Gi, Gi, Gi))

    return CurvatureReport(
        scal=float(scal.value()), ric_norm2=ric_norm2, riem_norm2=riem_norm2,
        lap_scal=float(lap_scal), point=point, label=label,
    )


def _curvature_n1(pot: RadialPotential, r):
    j = pot.jet(r, 6)
    # univariate jets as functions of r around the point
    from .jets import Jet

    rj = Jet.variable(r, 6)
    fp = _deriv_jet(j)
    G = fp + rj.truncated(fp.order) * _deriv_jet(fp)   # (r f')' = f' + r f''
    if G.coef[0] <= 0:
        raise NotPositiveDefinite(f"metric not positive definite at r = {r:g}")
    u = G.log()
    ric = -_laplace_like(u, r)
    scal = ric / G.truncated(ric.order)
    lap = _laplace_like(scal, r) / G.coef[0]
    Gv, Gr, Grr = G.coef[0], G.coef[1], 2.0 * G.coef[2]
    Rval = -(Gr + r * Grr) + r * Gr ** 2 / Gv
    return CurvatureReport(
        scal=float(scal.coef[0]), ric_norm2=float(scal.coef[0] ** 2),
        riem_norm2=float((Rval / Gv ** 2) ** 2), lap_scal=float(lap.coef[0]),
        point=(r,), label=pot.label,
    )


def _deriv_jet(j):
    from .jets import Jet

    n = j.order
    return Jet(j.coef[1:] * np.arange(1, n + 1), j.base_point)


def _laplace_like(w, r):
    """∂∂̄ of an invariant function w(r) in n = 1: w' + r w'' (as a jet)."""
    from .jets import Jet

    w1 = _deriv_jet(w)
    w2 = _deriv_jet(w1)
    rj = Jet.variable(r, w2.order)
    return w1.truncated(w2.order) + rj * w2


def curvature_report(pot, point) -> CurvatureReport:
    """Scalar curvature, |Ric|², |R|², Δscal and (a₁, a₂) at the point."""
    if isinstance(pot, RadialPotential) and pot.n == 1:
        r = float(point)
        if not pot.in_domain(r):
            raise OutOfDomain(f"r = {r:g} outside domain of {pot.label}")
        return _curvature_n1(pot, r)
    if isinstance(pot, RadialPotential):
        x1, x2 = _as_xpoint(pot, point)
        phi = pot.jet2(x1 + x2, _ORDERS) if x2 == 0.0 else _radial_jet2_general(pot, x1, x2)
        return _curvature_n2(phi, x1, x2, pot.label, (x1, x2))
    x1, x2 = _as_xpoint(pot, point)
    phi = pot.jet2((x1, x2), _ORDERS)
    return _curvature_n2(phi, x1, x2, pot.label, (x1, x2))


def _radial_jet2_general(pot, x1, x2):
    from .trees import radial_jet2

    fj = pot.jet(x1 + x2, _ORDERS[0] + _ORDERS[1])
    return radial_jet2(fj, _ORDERS, (x1, x2))


def einstein_defect(pot, point):
    """Spread of the eigenvalues of G⁻¹Ric; zero iff the metric is Einstein there."""
    rep = curvature_report(pot, point)
    if isinstance(pot, RadialPotential) and pot.n == 2:
        x1, x2 = _as_xpoint(pot, point)
    else:
        x1, x2 = point if isinstance(point, (tuple, list)) else (float(point), 0.0)
    G = metric_matrix(pot, point)
    phi = (pot.jet2(x1 + x2, _ORDERS) if isinstance(pot, RadialPotential)
           else pot.jet2((x1, x2), _ORDERS))
    x1j, x2j = _coords_like(phi, x1, x2)
    p1, p2 = phi.dx(), phi.dy()
    p11, p12, p22 = p1.dx(), p1.dy(), p2.dy()
    det = (p1 + x1j * p11) * (p2 + x2j * p22) - x1j * x2j * p12 * p12
    u = det.log()
    u1, u2 = u.dx(), u.dy()
    u11, u12, u22 = u1.dx(), u1.dy(), u2.dy()
    s12 = math.sqrt(x1 * x2)
    ric = -np.array([
        [u1.value() + x1 * u11.value(), s12 * u12.value()],
        [s12 * u12.value(), u2.value() + x2 * u22.value()],
    ])
    eig = np.linalg.eigvals(np.linalg.inv(G) @ ric)
    return float(np.max(eig.real) - np.min(eig.real))
