"""Built-in graph families with analytic jets and boundary fixtures.

Every family evaluates second-order covariant jets of its graph function in
the disk frame, batched over points.  Radial profiles u = f(rho) use

    u_a  = f'(rho) rho^(a),
    u_ab = f''(rho) rho^(a) rho^(b) + f'(rho) rho delta_ab,

which is exact because Hess rho = rho * Identity.  The catalogue:

* ``constant_slice``      u = t0 (totally geodesic);
* ``horosphere``          u = d +/- log rho (umbilic, B = +/-Identity);
* ``sigma_c``             u = c/rho (boundary weight psi_c);
* ``equidistant``         u = arcsinh(c/rho), umbilic with principal
                          curvatures tanh(arcsinh(-c));
* ``ads_schwarzschild``   radial graph inducing the metric dr^2/V + r^2 dw^2,
                          V = 1 + r^2 - 2 m r^(2-n), defined for r > r_h;
* ``decay_perturbation``  u = eps rho^-(tau/2+1) (1 + kappa rho^(1)/rho), a
                          synthetic family with first-order decay rate tau/2;
* ``horosphere_cap``      the ads_schwarzschild exterior truncated where it
                          meets a horosphere orthogonally (wall radius found
                          by bisection on the orthogonality defect);
* spline-backed radial profiles for tabulated data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import BadParams, DomainError, NonMonotone, SplineDomain
from .graph_geometry import BatchJets, GraphJet, WallSpec
from .model_space import (SUPPORTED_DIMS, DiskPoint, Isometry,
                          covariant_hessian_frame, frame_scale,
                          potential_values_batch)


def polar_batch(r: float, thetas: np.ndarray):
    """Disk coordinates (x, 1-|x|^2) of the sphere {radius r}, exactly."""
    rho = math.hypot(r, 1.0)
    x = thetas * (r / (rho + 1.0))
    oms = np.full(thetas.shape[0], 2.0 / (rho + 1.0))
    return x, oms


@dataclass(frozen=True)
class Boundary:
    """Rotationally symmetric inner boundary: the sphere {r = locus_r} on a wall."""

    wall: WallSpec
    locus_r: float


class GraphFamily:
    """A named graph over H^n with analytic jets.

    Subclasses implement :meth:`graph_values`; everything else (pointwise
    jets, polar evaluation) is shared.  ``declared_tau`` is the nominal decay
    order of the metric perturbation (None when the family does not decay,
    ``inf`` for exact slices); ``asymptotic_radius`` bounds the region where
    boundary integrals make sense; ``min_radius`` is the inner edge of the
    profile domain and ``horizon_sqrt_radius`` marks an inverse-square-root
    slope singularity the bulk quadrature handles by substitution.
    """

    name = "family"

    def __init__(self, n: int, params: Optional[dict] = None, declared_tau=None,
                 asymptotic_radius: float = 0.0, boundary: Optional[Boundary] = None,
                 min_radius: float = 0.0, horizon_sqrt_radius: Optional[float] = None):
        if n not in SUPPORTED_DIMS:
            raise BadParams(f"dimension n must be one of {SUPPORTED_DIMS}, got {n}")
        self.n = n
        self.params = dict(params or {})
        self.declared_tau = declared_tau
        self.asymptotic_radius = float(asymptotic_radius)
        self.boundary = boundary
        self.min_radius = float(min_radius)
        self.horizon_sqrt_radius = horizon_sqrt_radius

    # -- required per family ------------------------------------------------
    def graph_values(self, x: np.ndarray, one_minus_sq: np.ndarray):
        """(u, u_alpha, u_alphabeta) arrays at the given disk points."""
        raise NotImplementedError

    # -- shared -------------------------------------------------------------
    def jets_batch(self, x: np.ndarray, one_minus_sq: np.ndarray) -> BatchJets:
        x = np.asarray(x, dtype=float)
        if x.ndim != 2 or x.shape[1] != self.n:
            raise DomainError(f"expected points of shape (N, {self.n}), got {x.shape}")
        oms = np.asarray(one_minus_sq, dtype=float)
        rho, rho_alpha = potential_values_batch(x, oms)
        self._check_domain(rho)
        u, ua, uab = self.graph_values(x, oms)
        return BatchJets(x=x, one_minus_sq=oms, rho=rho, rho_alpha=rho_alpha,
                         u=u, u_alpha=ua, u_alphabeta=uab)

    def jets(self, p: DiskPoint) -> GraphJet:
        return self.jets_batch(p.x[None, :], np.array([p.one_minus_sq])).jet(0)

    def jets_polar(self, r: float, thetas: np.ndarray) -> BatchJets:
        x, oms = polar_batch(r, thetas)
        return self.jets_batch(x, oms)

    def _check_domain(self, rho: np.ndarray):
        if self.min_radius > 0.0:
            rho_min = math.hypot(self.min_radius, 1.0)
            if np.any(rho < rho_min * (1.0 - 1e-12)):
                raise DomainError(
                    f"{self.name}: point inside the inner radius r = {self.min_radius:.6g}")

    def __repr__(self):
        ps = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                       for k, v in self.params.items())
        return f"<{self.name} n={self.n} {ps}>"


# ---------------------------------------------------------------------------
# radial profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadialProfile:
    """f(rho) with two derivatives on a half-open domain [rho_lo, rho_hi)."""

    f: Callable[[np.ndarray], np.ndarray]
    d1: Callable[[np.ndarray], np.ndarray]
    d2: Callable[[np.ndarray], np.ndarray]
    rho_lo: float = 1.0
    rho_hi: float = math.inf


class RadialFamily(GraphFamily):
    def __init__(self, n, profile: RadialProfile, name="radial", **kw):
        super().__init__(n, **kw)
        self.profile = profile
        self.name = name

    def graph_values(self, x, one_minus_sq):
        rho, rho_alpha = potential_values_batch(x, one_minus_sq)
        pr = self.profile
        if np.any(rho < pr.rho_lo * (1.0 - 1e-12)) or np.any(rho > pr.rho_hi):
            raise SplineDomain(
                f"{self.name}: rho outside profile domain [{pr.rho_lo:.6g}, {pr.rho_hi:.6g})")
        fp = pr.d1(rho)
        fpp = pr.d2(rho)
        u = pr.f(rho)
        ua = fp[:, None] * rho_alpha
        uab = (fpp[:, None, None] * np.einsum("ia,ib->iab", rho_alpha, rho_alpha)
               + (fp * rho)[:, None, None] * np.eye(self.n)[None, :, :])
        return u, ua, uab


def constant_slice(n: int, t0: float = 0.0) -> GraphFamily:
    """The totally geodesic slice u = t0 (zero slice for t0 = 0)."""
    prof = RadialProfile(f=lambda r: np.full_like(r, float(t0)),
                         d1=lambda r: np.zeros_like(r),
                         d2=lambda r: np.zeros_like(r))
    fam = RadialFamily(n, prof, name="constant_slice", params={"t0": float(t0)},
                       declared_tau=math.inf)
    return fam


def horosphere_graph(n: int, d: float = 0.0, sign: int = 1) -> GraphFamily:
    """Horosphere graph u = d + sign * log rho; umbilic, not asymptotically decaying."""
    if sign not in (1, -1):
        raise BadParams("horosphere sign must be +1 or -1")
    prof = RadialProfile(f=lambda r: d + sign * np.log(r),
                         d1=lambda r: sign / r,
                         d2=lambda r: -sign / r**2)
    return RadialFamily(n, prof, name="horosphere",
                        params={"d": float(d), "sign": sign}, declared_tau=None)


def sigma_c_graph(n: int, c: float) -> GraphFamily:
    """Graph u = c/rho; its angle function is psi_c(rho)."""
    if not math.isfinite(c):
        raise BadParams("sigma_c parameter must be finite")
    prof = RadialProfile(f=lambda r: c / r,
                         d1=lambda r: -c / r**2,
                         d2=lambda r: 2.0 * c / r**3)
    return RadialFamily(n, prof, name="sigma_c", params={"c": float(c)},
                        declared_tau=None)


def equidistant_graph(n: int, c: float) -> GraphFamily:
    """Graph u = arcsinh(c/rho): the hypersurface at constant distance
    arcsinh(|c|) from the zero slice, umbilic with curvature tanh(arcsinh(-c))
    for the upward normal convention."""
    if not math.isfinite(c):
        raise BadParams("equidistant parameter must be finite")
    prof = RadialProfile(
        f=lambda r: np.arcsinh(c / r),
        d1=lambda r: -c / (r * np.sqrt(r * r + c * c)),
        d2=lambda r: c * (2.0 * r * r + c * c) / (r**2 * (r * r + c * c) ** 1.5))
    return RadialFamily(n, prof, name="equidistant", params={"c": float(c)},
                        declared_tau=None)


def true_equidistant(n: int, c_tilde: float) -> GraphFamily:
    """Umbilicity oracle fixture: equidistant at signed distance s with
    sinh s = c_tilde, oriented so the shape operator is +tanh(s) Identity."""
    if c_tilde < 0:
        raise BadParams("c_tilde must be >= 0")
    fam = equidistant_graph(n, -float(c_tilde))
    fam.name = "true_equidistant"
    fam.params = {"c_tilde": float(c_tilde)}
    return fam


def decay_perturbation(n: int, tau: float, eps: float = 1e-2,
                       mode_kappa: float = 0.0) -> GraphFamily:
    """Synthetic perturbation u = eps rho^(-s) (1 + kappa rho^(1)/rho),
    s = tau/2 + 1, so that |rho u_a| + |r_b u_a + rho u_ab| ~ r^(-tau/2).

    ``mode_kappa`` switches on a bounded first-harmonic angular modulation
    (smooth across the origin) that breaks rotational symmetry without
    changing the decay rate.
    """
    if tau <= 0 or not math.isfinite(tau):
        raise BadParams("decay rate tau must be positive")
    s = tau / 2.0 + 1.0
    kappa = float(mode_kappa)

    class _Decay(GraphFamily):
        name = "decay_perturbation"

        def graph_values(self, x, one_minus_sq):
            rho, rho_alpha = potential_values_batch(x, one_minus_sq)
            npts, ndim = x.shape
            eye = np.eye(ndim)
            g = eps * rho**-s
            gp = -s * eps * rho**-(s + 1.0)
            gpp = s * (s + 1.0) * eps * rho**-(s + 2.0)
            if kappa == 0.0:
                u = g
                ua = gp[:, None] * rho_alpha
                uab = (gpp[:, None, None] * np.einsum("ia,ib->iab", rho_alpha, rho_alpha)
                       + (gp * rho)[:, None, None] * eye[None, :, :])
                return u, ua, uab
            # angular factor mu = rho^(1)/rho: bounded, |mu| < 1
            P = rho_alpha[:, 0]
            P_a = np.tile(eye[0], (npts, 1)) + x * P[:, None]
            mu = P / rho
            mu_a = (P_a - mu[:, None] * rho_alpha) / rho[:, None]
            mu_ab = (-(np.einsum("ia,ib->iab", P_a, rho_alpha)
                       + np.einsum("ia,ib->iab", rho_alpha, P_a)) / (rho**2)[:, None, None]
                     + 2.0 * (P / rho**3)[:, None, None]
                     * np.einsum("ia,ib->iab", rho_alpha, rho_alpha))
            m = 1.0 + kappa * mu
            u = g * m
            ua = (gp * m)[:, None] * rho_alpha + (g * kappa)[:, None] * mu_a
            uab = ((gpp * m)[:, None, None] * np.einsum("ia,ib->iab", rho_alpha, rho_alpha)
                   + (gp * rho * m)[:, None, None] * eye[None, :, :]
                   + (gp * kappa)[:, None, None]
                   * (np.einsum("ia,ib->iab", rho_alpha, mu_a)
                      + np.einsum("ia,ib->iab", mu_a, rho_alpha))
                   + (g * kappa)[:, None, None] * mu_ab)
            return u, ua, uab

    return _Decay(n, params={"tau": float(tau), "eps": float(eps), "kappa": kappa},
                  declared_tau=float(tau))


# ---------------------------------------------------------------------------
# Schwarzschild-AdS slice as a graph
# ---------------------------------------------------------------------------

def _horizon_radius(n: int, m: float) -> float:
    """Unique positive root of V(r) = 1 + r^2 - 2 m r^(2-n) (V is increasing)."""
    lo, hi = 1e-12, max(2.0, (2.0 * m) ** (1.0 / n) + 2.0)
    f = lambda r: 1.0 + r * r - 2.0 * m * r ** (2 - n)
    while f(hi) <= 0.0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


class AdsSchwarzschildFamily(RadialFamily):
    """Radial graph whose induced metric is dr^2/V(r) + r^2 dOmega^2.

    Solving g_rr = 1/V for the height function gives
    du/dr = sqrt(2 m r^(2-n)) / (rho^2 sqrt(V)); the slope has an
    (r - r_h)^(-1/2) singularity at the horizon, so the profile domain is
    r >= r_h (1 + delta_rel).  The inner boundary sphere {r = r_h} lies in
    the totally geodesic slice t = 0 and the graph meets it vertically.
    """

    def __init__(self, n: int, m: float, delta_rel: float = 1e-3):
        if m <= 0 or not math.isfinite(m):
            raise BadParams("mass parameter m must be positive")
        if n == 2 and m <= 0.5:
            raise BadParams("for n = 2 a horizon needs m > 1/2")
        r_h = _horizon_radius(n, m)
        self.m = float(m)
        self.r_h = r_h
        nn = n

        def V(r):
            return 1.0 + r * r - 2.0 * m * r ** (2 - nn)

        def u_r(r):
            q = 2.0 * m * r ** (2.0 - nn)
            return np.sqrt(q) / ((r * r + 1.0) * np.sqrt(V(r)))

        def d1(rho):
            r = np.sqrt(rho * rho - 1.0)
            return rho * u_r(r) / r

        def d2(rho):
            r = np.sqrt(rho * rho - 1.0)
            q = 2.0 * m * r ** (2.0 - nn)
            qp = (2.0 - nn) * q / r
            vp = 2.0 * r - qp
            v = V(r)
            ur = u_r(r)
            urp = ur * (0.5 * qp / q - 2.0 * r / (r * r + 1.0) - 0.5 * vp / v)
            dfdr = (r / rho * ur + rho * urp) / r - rho * ur / r**2
            return dfdr * rho / r

        prof = RadialProfile(
            f=lambda rho: self._height(np.sqrt(rho * rho - 1.0)),
            d1=d1, d2=d2, rho_lo=math.hypot(r_h * (1.0 + delta_rel), 1.0))
        super().__init__(
            n, prof, name="ads_schwarzschild",
            params={"m": float(m), "delta_rel": float(delta_rel)},
            declared_tau=float(n), asymptotic_radius=2.0 * r_h,
            min_radius=r_h * (1.0 + delta_rel), horizon_sqrt_radius=r_h,
            boundary=Boundary(wall=WallSpec(kind="geodesic_slice", t0=0.0),
                              locus_r=r_h))
        self._u_r = u_r

    def _height(self, r):
        """u(r) = integral of du/dr from the horizon, via y = sqrt(r - r_h)."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        nodes, weights = np.polynomial.legendre.leggauss(64)
        out = np.empty(r.shape)
        for i, ri in enumerate(r):
            y_max = math.sqrt(max(ri - self.r_h, 0.0))
            if y_max == 0.0:
                out[i] = 0.0
                continue
            total = 0.0
            edges = np.linspace(0.0, y_max, 1 + max(1, int(y_max / 0.25)))
            for a, b in zip(edges[:-1], edges[1:]):
                y = 0.5 * (b - a) * nodes + 0.5 * (a + b)
                rr = self.r_h + y * y
                total += 0.5 * (b - a) * float(np.sum(weights * self._u_r(rr) * 2.0 * y))
            out[i] = total
        return out


def ads_schwarzschild(n: int, m: float, delta_rel: float = 1e-3) -> GraphFamily:
    return AdsSchwarzschildFamily(n, m, delta_rel)


# ---------------------------------------------------------------------------
# horosphere-cap fixture
# ---------------------------------------------------------------------------

def horosphere_cap(n: int, m: float = 1.0, bisect_tol: float = 1e-10) -> GraphFamily:
    """Graph with boundary on a horosphere, meeting it orthogonally.

    Uses the ads_schwarzschild profile and shoots the wall radius by bisection
    on the orthogonality defect 1 - rho^2 r du/dr (monotone through the root;
    equivalently a shot on the profile slope at the wall).  The matching
    horosphere offset d is then read off from the profile height.  Since the
    profile has vanishing 2-mean curvature, the fixture realizes the equality
    case of the horospherical boundary mass formula.
    """
    base = AdsSchwarzschildFamily(n, m)
    r_h = base.r_h

    def defect(r):
        ur = float(base._u_r(np.array([r]))[0])
        return 1.0 - (r * r + 1.0) * r * ur

    lo = r_h * (1.0 + 1e-9)
    hi = max(4.0 * r_h, 8.0)
    while defect(hi) <= 0.0:
        hi *= 2.0
    if defect(lo) >= 0.0:
        raise BadParams("cap shooting bracket failed: defect positive at the horizon")
    while hi - lo > bisect_tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if defect(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    r_wall = 0.5 * (lo + hi)
    rho_wall = math.hypot(r_wall, 1.0)
    d = float(base._height(np.array([r_wall]))[0]) - math.log(rho_wall)
    fam = AdsSchwarzschildFamily(n, m)
    fam.name = "horosphere_cap"
    fam.params = {"m": float(m), "r_wall": r_wall, "d": d}
    fam.boundary = Boundary(wall=WallSpec(kind="horosphere", d=d, sign=1),
                            locus_r=r_wall)
    fam.min_radius = r_wall
    fam.horizon_sqrt_radius = None
    fam.asymptotic_radius = 2.0 * r_wall
    return fam


# ---------------------------------------------------------------------------
# spline profiles and generic construction
# ---------------------------------------------------------------------------

def spline_profile(table) -> RadialProfile:
    """Natural cubic spline through rows (rho, f); queries outside the table
    raise SplineDomain.  The rho column must be strictly increasing with at
    least 4 rows."""
    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 4:
        raise BadParams("spline table must have >= 4 rows of (rho, f)")
    rho_col, f_col = arr[:, 0], arr[:, 1]
    if np.any(np.diff(rho_col) <= 0.0):
        raise NonMonotone("spline table rho column must be strictly increasing")
    if rho_col[0] < 1.0:
        raise BadParams("spline table rho values must be >= 1")
    cs = CubicSpline(rho_col, f_col, bc_type="natural")
    lo, hi = float(rho_col[0]), float(rho_col[-1])

    def guard(r):
        r = np.asarray(r, dtype=float)
        if np.any(r < lo - 1e-12) or np.any(r > hi + 1e-12):
            raise SplineDomain(f"rho outside spline table [{lo:.6g}, {hi:.6g}]")
        return r

    return RadialProfile(f=lambda r: cs(guard(r)), d1=lambda r: cs(guard(r), 1),
                         d2=lambda r: cs(guard(r), 2), rho_lo=lo, rho_hi=hi)


def radial_profile_family(n: int, profile: RadialProfile, name="radial",
                          declared_tau=None) -> GraphFamily:
    return RadialFamily(n, profile, name=name, declared_tau=declared_tau)


class TransformedFamily(GraphFamily):
    """Base family composed with an ambient isometry of the H^n factor.

    The new graph function is u' = u o Phi^{-1} where Phi is the disk map of
    the isometry; jets transport tensorially through the orthogonal frame
    Jacobian of Phi (no second derivatives of the map are needed).  Intended
    for equivariance checks; any declared boundary is dropped.
    """

    name = "transformed"

    def __init__(self, base: GraphFamily, iso: Isometry):
        if iso.n != base.n:
            raise BadParams("isometry dimension does not match the family")
        super().__init__(base.n, params=dict(base.params),
                         declared_tau=base.declared_tau,
                         asymptotic_radius=_transformed_radius(base, iso))
        self.base = base
        self.iso = iso
        self.name = f"transformed({base.name})"

    def graph_values(self, x, one_minus_sq):
        rho, rho_alpha = potential_values_batch(x, one_minus_sq)
        npts, ndim = x.shape
        L = self.iso.point_matrix()
        L_inv = self.iso.inverse().point_matrix()
        z = np.concatenate([rho[:, None], rho_alpha], axis=1)
        zp = z @ L_inv.T
        w = 1.0 + zp[:, 0]
        y = zp[:, 1:] / w[:, None]
        oms_y = 2.0 / w
        base_jets = self.base.jets_batch(y, oms_y)
        # frame Jacobian Q of Phi at y (Phi maps y back to x)
        lam_y = 0.5 * oms_y
        lam_x = 0.5 * one_minus_sq
        dz = np.empty((npts, ndim + 1, ndim))
        dz[:, 0, :] = y / (lam_y**2)[:, None]
        dz[:, 1:, :] = (np.eye(ndim)[None, :, :]
                        + np.einsum("ia,ib->iab", base_jets.rho_alpha, y)) / lam_y[:, None, None]
        dzp = np.einsum("jk,ikl->ijl", L, dz)
        wx = 1.0 + rho
        dphi = dzp[:, 1:, :] / wx[:, None, None] - np.einsum(
            "ia,il->ial", rho_alpha, dzp[:, 0, :]) / (wx**2)[:, None, None]
        Q = (lam_y / lam_x)[:, None, None] * dphi
        u = base_jets.u
        ua = np.einsum("iab,ib->ia", Q, base_jets.u_alpha)
        uab = np.einsum("iab,ibc,idc->iad", Q, base_jets.u_alphabeta, Q)
        return u, ua, uab


def _transformed_radius(base: GraphFamily, iso: Isometry) -> float:
    # shifting by hyperbolic distance s maps the ball r <= R into r <= R cosh s + ...
    boost = float(np.arccosh(max(1.0, iso.matrix[0, 0])))
    r0 = max(base.asymptotic_radius, base.min_radius, 1.0)
    return r0 * math.cosh(boost) + math.sinh(boost) * math.hypot(r0, 1.0)


def transformed_family(base: GraphFamily, iso: Isometry) -> GraphFamily:
    return TransformedFamily(base, iso)


# ---------------------------------------------------------------------------
# config-driven construction and jet self-test
# ---------------------------------------------------------------------------

_BUILDERS = {
    "zero_slice": lambda n, p: constant_slice(n, 0.0),
    "constant_slice": lambda n, p: constant_slice(n, p.get("t0", 0.0)),
    "horosphere": lambda n, p: horosphere_graph(n, p.get("d", 0.0), int(p.get("sign", 1))),
    "sigma_c": lambda n, p: sigma_c_graph(n, p["c"]),
    "equidistant": lambda n, p: equidistant_graph(n, p["c"]),
    "true_equidistant": lambda n, p: true_equidistant(n, p["c_tilde"]),
    "ads_schwarzschild": lambda n, p: ads_schwarzschild(
        n, p["m"], p.get("delta_rel", 1e-3)),
    "decay_perturbation": lambda n, p: decay_perturbation(
        n, p["tau"], p.get("eps", 1e-2), p.get("kappa", 0.0)),
    "horosphere_cap": lambda n, p: horosphere_cap(n, p.get("m", 1.0)),
}


def family_kinds():
    return sorted(_BUILDERS)


def make_family(spec: dict) -> GraphFamily:
    """Build a family from a flat config record: {kind, n, <params...>}."""
    if not isinstance(spec, dict):
        raise BadParams("family spec must be a mapping")
    spec = dict(spec)
    kind = spec.pop("kind", None)
    n = spec.pop("n", None)
    if kind not in _BUILDERS:
        raise BadParams(f"unknown family kind {kind!r}; choose from {family_kinds()}")
    if n not in SUPPORTED_DIMS:
        raise BadParams(f"family spec needs n in {SUPPORTED_DIMS}, got {n!r}")
    try:
        return _BUILDERS[kind](n, spec)
    except KeyError as exc:
        raise BadParams(f"family {kind!r} is missing parameter {exc}") from exc


def jet_fd_defect(family: GraphFamily, p: DiskPoint, h: float = 1e-5):
    """Self-test: compare analytic jets with centered finite differences of u.

    Returns (gradient defect, Hessian defect) in the frame; both are O(h^2)
    for correct jets.
    """
    n = p.n
    j = family.jets(p)

    def uval(xc):
        q = DiskPoint(xc)
        return float(family.jets(q).u)

    grad = np.empty(n)
    hess = np.empty((n, n))
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        fp, fm = uval(p.x + ei), uval(p.x - ei)
        grad[i] = (fp - fm) / (2 * h)
        hess[i, i] = (fp - 2.0 * float(j.u) + fm) / h**2
    for i in range(n):
        for k in range(i + 1, n):
            ei, ek = np.zeros(n), np.zeros(n)
            ei[i], ek[k] = h, h
            val = (uval(p.x + ei + ek) - uval(p.x + ei - ek)
                   - uval(p.x - ei + ek) + uval(p.x - ei - ek)) / (4 * h**2)
            hess[i, k] = hess[k, i] = val
    lam = frame_scale(p)
    grad_defect = float(np.max(np.abs(lam * grad - j.u_alpha)))
    cov = covariant_hessian_frame(j.u, grad, hess, p)
    hess_defect = float(np.max(np.abs(cov - j.u_alphabeta)))
    return grad_defect, hess_defect
