"""Hyperbolic model geometry in the Poincare disk.

The model space is H^n realized on the unit disk {|x| < 1} with metric

    b = (2/(1-|x|^2))^2 (dx_1^2 + ... + dx_n^2),

and orthonormal frame e_alpha = lambda(x) d/dx_alpha, lambda = (1-|x|^2)/2.
All tensor components elsewhere in the package are expressed in this frame;
coordinate expressions appear only in :func:`covariant_hessian_frame` and in
the finite-difference oracle.

The static potentials

    rho(x)       = (1+|x|^2)/(1-|x|^2)
    rho^(a)(x)   = 2 x_a/(1-|x|^2),        a = 1..n,

satisfy Hess phi = phi * b and rho^2 - sum_a (rho^(a))^2 = 1, so the span of
{rho, rho^(1), ..., rho^(n)} carries the Lorentz form

    (z, w) = z_0 w_0 - z_1 w_1 - ... - z_n w_n

with {rho^(i)} as an orthonormal basis.  Restricted Lorentz matrices act on
this (n+1)-dimensional coefficient space; the corresponding point action on
the disk is obtained by conjugating through the hyperboloid embedding
x -> (rho(x), rho^(1)(x), ..., rho^(n)(x)).

Geodesic polar coordinates use the "area radius" r with rho = sqrt(r^2 + 1),
|grad rho| = r, and metric dr^2/rho^2 + r^2 dtheta^2.  Large-radius work
should construct points through :class:`PolarPoint` (the disk coordinate
1-|x|^2 is then carried exactly instead of being recomputed with
cancellation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, DomainError, NotTimelikeFuture, UnsupportedDimension

SUPPORTED_DIMS = (2, 3, 4)

#: points with |x| >= 1 - BOUNDARY_MARGIN are rejected (coordinate degeneracy)
BOUNDARY_MARGIN = 1e-12


def _as_vector(x, name="x"):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DomainError(f"{name} must be a flat coordinate vector, got shape {v.shape}")
    return v


@dataclass(frozen=True, eq=False)
class DiskPoint:
    """A point of H^n in Poincare-disk coordinates, |x| < 1 strictly.

    ``one_minus_sq`` caches 1-|x|^2.  Constructors that know this quantity
    exactly (e.g. the polar conversion) pass it in, avoiding the cancellation
    in 1-|x|^2 near the boundary; everyone else lets it default.
    """

    x: np.ndarray
    one_minus_sq: float = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        v = _as_vector(self.x)
        object.__setattr__(self, "x", v)
        oms = self.one_minus_sq
        if oms is None:
            oms = 1.0 - float(v @ v)
        if oms <= BOUNDARY_MARGIN:
            raise DomainError(
                f"disk point too close to the boundary: 1-|x|^2 = {oms:.3e}")
        object.__setattr__(self, "one_minus_sq", float(oms))

    @property
    def n(self) -> int:
        return self.x.size


@dataclass(frozen=True, eq=False)
class PolarPoint:
    """Geodesic polar coordinates (r, theta), rho = sqrt(r^2+1), theta in S^(n-1)."""

    r: float
    theta: np.ndarray

    def __post_init__(self):
        t = _as_vector(self.theta, "theta")
        nt = float(np.linalg.norm(t))
        if not math.isfinite(self.r) or self.r <= 0.0:
            raise DomainError(f"polar radius must be positive, got {self.r}")
        if abs(nt - 1.0) > 1e-8:
            raise DomainError(f"theta must be a unit vector, |theta| = {nt}")
        if abs(nt - 1.0) > 1e-14:
            t = t / nt
        object.__setattr__(self, "theta", t)
        object.__setattr__(self, "r", float(self.r))

    @property
    def n(self) -> int:
        return self.theta.size

    @property
    def rho(self) -> float:
        return math.hypot(self.r, 1.0)


def disk_to_polar(p: DiskPoint) -> PolarPoint:
    """r = 2|x|/(1-|x|^2), theta = x/|x|."""
    norm = float(np.linalg.norm(p.x))
    if norm == 0.0:
        raise DomainError("polar coordinates are singular at the origin")
    return PolarPoint(2.0 * norm / p.one_minus_sq, p.x / norm)


def polar_to_disk(q: PolarPoint) -> DiskPoint:
    """|x| = r/(rho+1); 1-|x|^2 = 2/(rho+1) is carried exactly."""
    rho = q.rho
    return DiskPoint(q.theta * (q.r / (rho + 1.0)), one_minus_sq=2.0 / (rho + 1.0))


def frame_scale(p: DiskPoint) -> float:
    """Conformal frame factor lambda(x) = (1-|x|^2)/2."""
    return 0.5 * p.one_minus_sq


# ---------------------------------------------------------------------------
# static potentials
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PotentialJet:
    """Second-order data of the potential rho at a point (frame components)."""

    rho: float
    rho_alpha: np.ndarray
    hess_rho: np.ndarray


def potential_jets(p: DiskPoint) -> PotentialJet:
    """Exact analytic jet of rho; Hess rho = rho * Identity in the frame."""
    rho, rho_a = potential_values(p)
    return PotentialJet(rho=rho, rho_alpha=rho_a, hess_rho=rho * np.eye(p.n))


def potential_values(p: DiskPoint):
    """(rho, grad rho) with grad rho_a = rho^(a) = 2 x_a/(1-|x|^2)."""
    oms = p.one_minus_sq
    rho = (2.0 - oms) / oms
    return rho, 2.0 * p.x / oms


def potential_basis(p: DiskPoint):
    """Values and frame gradients of the basis {rho, rho^(1), .., rho^(n)}.

    Returns ``(vals, grads)`` with ``vals[i]`` the i-th potential and
    ``grads[i, a] = e_a(rho^(i))``.  Gradients follow from Hess phi = phi*b:
    e_b(rho) = rho^(b) and e_b(rho^(a)) = delta_ab + x_b rho^(a).
    """
    rho, rho_a = potential_values(p)
    n = p.n
    vals = np.empty(n + 1)
    vals[0] = rho
    vals[1:] = rho_a
    grads = np.empty((n + 1, n))
    grads[0] = rho_a
    grads[1:] = np.eye(n) + np.outer(rho_a, p.x)
    return vals, grads


def potential_values_batch(x: np.ndarray, one_minus_sq: np.ndarray):
    """Vectorized (rho, grad rho) for points stacked along the first axis."""
    rho = (2.0 - one_minus_sq) / one_minus_sq
    return rho, 2.0 * x / one_minus_sq[:, None]


def covariant_hessian_frame(coord_value, coord_grad, coord_hess, p: DiskPoint) -> np.ndarray:
    """Frame covariant Hessian of a scalar from its coordinate jets at ``p``.

    For the conformal metric b = lambda^{-2} dx^2 the Christoffel symbols are
    Gamma^k_ij = (x_i d_jk + x_j d_ik - x_k d_ij)/lambda, so

        Hess(e_a, e_b) = lambda^2 d2u_ab
                         - lambda (x_a du_b + x_b du_a - <x, du> d_ab).

    ``coord_value`` is accepted for interface uniformity but does not enter.
    """
    del coord_value
    du = _as_vector(coord_grad, "coord_grad")
    d2u = np.asarray(coord_hess, dtype=float)
    n = p.n
    if du.size != n or d2u.shape != (n, n):
        raise DimensionMismatch("coordinate jets do not match the point dimension")
    lam = frame_scale(p)
    h = lam * lam * d2u - lam * (
        np.outer(p.x, du) + np.outer(du, p.x) - float(p.x @ du) * np.eye(n))
    return 0.5 * (h + h.T)


# ---------------------------------------------------------------------------
# Lorentz algebra on the potential space
# ---------------------------------------------------------------------------

class CausalClass(Enum):
    TIMELIKE_FUTURE = "timelike-future"
    TIMELIKE_PAST = "timelike-past"
    NULL_FUTURE = "null-future"
    NULL_PAST = "null-past"
    SPACELIKE = "spacelike"
    ZERO = "zero"


def lorentz_inner(z, w) -> float:
    """(z, w) = z_0 w_0 - sum_{a>=1} z_a w_a."""
    zv = _as_vector(z, "z")
    wv = _as_vector(w, "w")
    if zv.size != wv.size:
        raise DimensionMismatch(f"lorentz_inner: {zv.size} vs {wv.size}")
    return float(zv[0] * wv[0] - zv[1:] @ wv[1:])


def classify_causal(P) -> CausalClass:
    """Causal type of a coefficient vector; the null cone gets a relative
    tolerance 1e-10 |P|^2 and vectors below 1e-12 in norm count as zero."""
    v = _as_vector(P, "P")
    norm2 = float(v @ v)
    if math.sqrt(norm2) <= 1e-12:
        return CausalClass.ZERO
    q = lorentz_inner(v, v)
    if abs(q) <= 1e-10 * norm2:
        return CausalClass.NULL_FUTURE if v[0] > 0 else CausalClass.NULL_PAST
    if q > 0:
        return CausalClass.TIMELIKE_FUTURE if v[0] > 0 else CausalClass.TIMELIKE_PAST
    return CausalClass.SPACELIKE


def _minkowski(m: int) -> np.ndarray:
    eta = -np.eye(m)
    eta[0, 0] = 1.0
    return eta


@dataclass(frozen=True, eq=False)
class Isometry:
    """Restricted Lorentz matrix acting on potential-coefficient vectors.

    ``matrix`` is (n+1)x(n+1), preserves the Lorentz form and the time
    orientation (entry [0,0] >= 1).  ``apply_potential_coeffs`` implements
    phi -> phi o A^{-1} on coefficients; ``apply_point`` is the induced disk
    map, obtained by conjugating with the Minkowski metric (the coefficient
    and point actions are contragredient to each other).
    """

    matrix: np.ndarray
    kind: str = "composite"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("isometry matrix must be square")
        eta = _minkowski(m.shape[0])
        defect = np.max(np.abs(m.T @ eta @ m - eta))
        if defect > 1e-12:
            raise DomainError(f"matrix does not preserve the Lorentz form (defect {defect:.2e})")
        if m[0, 0] < 1.0 - 1e-12:
            raise DomainError("time orientation not preserved (matrix[0,0] < 1)")

    @property
    def n(self) -> int:
        return self.matrix.shape[0] - 1

    def apply_potential_coeffs(self, coeffs) -> np.ndarray:
        c = _as_vector(coeffs, "coeffs")
        if c.size != self.matrix.shape[0]:
            raise DimensionMismatch("coefficient vector does not match isometry size")
        return self.matrix @ c

    def point_matrix(self) -> np.ndarray:
        """Matrix acting on hyperboloid coordinates (rho, rho^(1), ...)."""
        eta = _minkowski(self.matrix.shape[0])
        return eta @ self.matrix @ eta

    def apply_point(self, p: DiskPoint) -> DiskPoint:
        z = np.empty(p.n + 1)
        z[0], z[1:] = potential_values(p)
        zp = self.point_matrix() @ z
        return DiskPoint(zp[1:] / (1.0 + zp[0]), one_minus_sq=2.0 / (zp[0] + 1.0))

    def compose(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix, kind="composite")

    def inverse(self) -> "Isometry":
        eta = _minkowski(self.matrix.shape[0])
        return Isometry(eta @ self.matrix.T @ eta, kind=self.kind)

    @staticmethod
    def identity(n: int) -> "Isometry":
        return Isometry(np.eye(n + 1), kind="rotation")

    @staticmethod
    def rotation(n: int, axis_a: int, axis_b: int, angle: float) -> "Isometry":
        """Rotation in the (spatial) coefficient plane (axis_a, axis_b), 1-based."""
        if not (1 <= axis_a <= n and 1 <= axis_b <= n and axis_a != axis_b):
            raise DomainError("rotation axes must be distinct spatial indices in 1..n")
        m = np.eye(n + 1)
        c, s = math.cos(angle), math.sin(angle)
        m[axis_a, axis_a] = c
        m[axis_b, axis_b] = c
        m[axis_a, axis_b] = -s
        m[axis_b, axis_a] = s
        return Isometry(m, kind="rotation")

    @staticmethod
    def boost(n: int, direction, rapidity: float) -> "Isometry":
        """Boost of given rapidity along a spatial unit direction."""
        d = _as_vector(direction, "direction")
        if d.size != n:
            raise DimensionMismatch("boost direction must have n components")
        nd = float(np.linalg.norm(d))
        if nd == 0.0:
            raise DomainError("boost direction must be nonzero")
        d = d / nd
        ch, sh = math.cosh(rapidity), math.sinh(rapidity)
        m = np.eye(n + 1)
        m[0, 0] = ch
        m[0, 1:] = sh * d
        m[1:, 0] = sh * d
        m[1:, 1:] = np.eye(n) + (ch - 1.0) * np.outer(d, d)
        return Isometry(m, kind="boost")


def rest_boost(P) -> Isometry:
    """Boost carrying a timelike-future coefficient vector to (m, 0, ..., 0).

    m = sqrt((P,P)); raises :class:`NotTimelikeFuture` otherwise.
    """
    v = _as_vector(P, "P")
    if classify_causal(v) is not CausalClass.TIMELIKE_FUTURE:
        raise NotTimelikeFuture(
            f"rest frame undefined for causal class {classify_causal(v).value}")
    m = math.sqrt(lorentz_inner(v, v))
    u = v / m                        # unit timelike future: u0^2 - |s|^2 = 1
    gamma, s = u[0], u[1:]
    n = s.size
    b = np.empty((n + 1, n + 1))
    b[0, 0] = gamma
    b[0, 1:] = -s
    b[1:, 0] = -s
    b[1:, 1:] = np.eye(n) + np.outer(s, s) / (1.0 + gamma)
    return Isometry(b, kind="boost")


def isometry_action_on_potentials(A: Isometry, coeffs) -> np.ndarray:
    """Coefficients of phi o A^{-1} for phi with the given coefficients."""
    return A.apply_potential_coeffs(coeffs)


def isometry_frame_jacobian(A: Isometry, p: DiskPoint):
    """Image point and frame-orthogonal Jacobian of the disk map of ``A``.

    Returns ``(q, Q)`` with q = A(p) and Q the matrix of the differential in
    the orthonormal frames, dA(e_b(p)) = sum_a Q[a, b] e_a(q).  Q is orthogonal
    since the point map is an isometry of b.
    """
    n = p.n
    lam_p = frame_scale(p)
    rho, rho_a = potential_values(p)
    # coordinate Jacobian of the hyperboloid embedding Z(x) = (rho, rho^(.))
    dz = np.empty((n + 1, n))
    dz[0] = p.x / lam_p**2
    dz[1:] = (np.eye(n) + np.outer(rho_a, p.x)) / lam_p
    zp = A.point_matrix() @ np.concatenate(([rho], rho_a))
    dzp = A.point_matrix() @ dz
    w = 1.0 + zp[0]
    q = DiskPoint(zp[1:] / w, one_minus_sq=2.0 / w)
    # projection x'_a = z'_a / (1 + z'_0)
    dphi = dzp[1:] / w - np.outer(zp[1:], dzp[0]) / w**2
    Q = (lam_p / frame_scale(q)) * dphi
    return q, Q


# ---------------------------------------------------------------------------
# half-space picture and sphere quadrature
# ---------------------------------------------------------------------------

def half_space_map(p: DiskPoint, s: float) -> np.ndarray:
    """Isometry of H^n x R onto the upper half-space model,

        (x, s) -> e^s (2x/(1+|x|^2), (1-|x|^2)/(1+|x|^2)),

    with |image| = e^s and last component > 0.  Vertical translates of the
    s = 0 hemisphere sweep out concentric hemispheres.
    """
    opn = 2.0 - p.one_minus_sq          # 1 + |x|^2
    out = np.empty(p.n + 1)
    out[:-1] = 2.0 * p.x / opn
    out[-1] = p.one_minus_sq / opn
    return math.exp(s) * out


def sphere_area(k: int) -> float:
    """Area of the unit k-sphere S^k: 2 pi^((k+1)/2) / Gamma((k+1)/2)."""
    return 2.0 * math.pi ** ((k + 1) / 2.0) / math.gamma((k + 1) / 2.0)


def sphere_quadrature(dim: int, order: int):
    """Positive quadrature on S^dim, exact for polynomials of degree <= order.

    Product rules: equispaced trapezoid on S^1, Gauss-Legendre (polar cosine)
    x trapezoid on S^2, and a Gauss rule for the sin^2 weight of the extra
    polar angle on S^3.  Returns ``(nodes, weights)`` with nodes of shape
    (N, dim+1); weights sum to the total area of S^dim.
    """
    if order < 2:
        raise DomainError("quadrature order must be >= 2")
    if dim == 1:
        m = order + 1
        ang = 2.0 * math.pi * np.arange(m) / m
        nodes = np.column_stack([np.cos(ang), np.sin(ang)])
        weights = np.full(m, 2.0 * math.pi / m)
        return nodes, weights
    if dim == 2:
        nt = (order + 2) // 2
        t, wt = np.polynomial.legendre.leggauss(nt)          # t = cos(polar)
        m = order + 1
        ang = 2.0 * math.pi * np.arange(m) / m
        st = np.sqrt(1.0 - t * t)
        nodes = np.empty((nt * m, 3))
        nodes[:, 0] = np.repeat(st, m) * np.tile(np.cos(ang), nt)
        nodes[:, 1] = np.repeat(st, m) * np.tile(np.sin(ang), nt)
        nodes[:, 2] = np.repeat(t, m)
        weights = np.repeat(wt, m) * (2.0 * math.pi / m)
        return nodes, weights
    if dim == 3:
        # x = (cos psi, sin psi * omega): measure sin^2 psi dpsi dS^2(omega).
        # Gauss-Chebyshev (2nd kind) in c = cos psi integrates the sqrt(1-c^2)
        # weight exactly for polynomial degree <= 2k-1.
        k = (order + 2) // 2
        j = np.arange(1, k + 1)
        c = np.cos(j * math.pi / (k + 1))
        wc = (math.pi / (k + 1)) * np.sin(j * math.pi / (k + 1)) ** 2
        inner_nodes, inner_w = sphere_quadrature(2, order)
        ni = inner_nodes.shape[0]
        s = np.sqrt(1.0 - c * c)
        nodes = np.empty((k * ni, 4))
        nodes[:, 0] = np.repeat(c, ni)
        nodes[:, 1:] = np.repeat(s, ni)[:, None] * np.tile(inner_nodes, (k, 1))
        weights = np.repeat(wc, ni) * np.tile(inner_w, k)
        return nodes, weights
    raise UnsupportedDimension(f"sphere quadrature implemented for dim 1..3, got {dim}")
