"""Pointwise extrinsic geometry of vertical graphs over H^n in H^n x_rho R.

A graph {(x, u(x))} in the warped product with metric b + rho^2 dt^2 carries
the unit normal N = (e_0 - rho grad u)/W, W = sqrt(1 + rho^2 |grad u|^2),
where e_0 = rho^{-1} d/dt.  In the orthonormal frame of the base the induced
metric, second fundamental form (w.r.t. B = -grad N), shape operator and the
symmetric functions S1 (mean curvature) and S2 (2-mean curvature) all have
closed forms in the second-order jet of u; this module evaluates them, the
Newton-tensor contraction G X^T with the vertical Killing field, and the
boundary data needed by the horizon terms.

Sign conventions: the totally geodesic zero slice has B = 0; the upward
horosphere graph u = d + log rho is umbilic with B = +Identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, WallMismatch
from .model_space import DiskPoint, PotentialJet, potential_jets

_SYM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GraphJet:
    """Second-order covariant jet of the graph function at a point.

    ``u_alpha`` is the frame gradient and ``u_alphabeta`` the covariant frame
    Hessian (symmetric); ``pot`` carries the potential jet of the base point.
    """

    point: DiskPoint
    u: float
    u_alpha: np.ndarray
    u_alphabeta: np.ndarray
    pot: PotentialJet

    def __post_init__(self):
        ua = np.asarray(self.u_alpha, dtype=float)
        uab = np.asarray(self.u_alphabeta, dtype=float)
        n = self.point.n
        if ua.shape != (n,) or uab.shape != (n, n):
            raise DomainError("jet arrays do not match the point dimension")
        skew = float(np.max(np.abs(uab - uab.T))) if n > 0 else 0.0
        scale = 1.0 + float(np.max(np.abs(uab)))
        if skew > _SYM_TOL * scale:
            raise DomainError(f"covariant Hessian not symmetric (defect {skew:.2e})")
        object.__setattr__(self, "u_alpha", ua)
        object.__setattr__(self, "u_alphabeta", 0.5 * (uab + uab.T))


@dataclass(frozen=True, eq=False)
class ExtrinsicData:
    """First and second fundamental data of the graph at one point."""

    W: float
    g: np.ndarray
    g_inv: np.ndarray
    S: np.ndarray            # second fundamental form, frame components
    B: np.ndarray            # shape operator g^{-1} S
    S1: float
    S2: float
    GXT: np.ndarray          # Newton tensor applied to the tangential Killing part
    Theta: float             # angle function rho/W
    dM_density: float        # area element relative to dvol_b (equals W)


# ---------------------------------------------------------------------------
# batch layer: all formulas are evaluated on stacked arrays, the pointwise
# API below wraps batches of size one.
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BatchJets:
    """Jets of a family at many points (leading axis indexes points)."""

    x: np.ndarray              # (N, n)
    one_minus_sq: np.ndarray   # (N,)
    rho: np.ndarray            # (N,)
    rho_alpha: np.ndarray      # (N, n)
    u: np.ndarray              # (N,)
    u_alpha: np.ndarray        # (N, n)
    u_alphabeta: np.ndarray    # (N, n, n)

    @property
    def size(self) -> int:
        return self.rho.shape[0]

    @property
    def n(self) -> int:
        return self.x.shape[1]

    def jet(self, i: int) -> GraphJet:
        p = DiskPoint(self.x[i], one_minus_sq=float(self.one_minus_sq[i]))
        pot = PotentialJet(rho=float(self.rho[i]), rho_alpha=self.rho_alpha[i],
                           hess_rho=float(self.rho[i]) * np.eye(self.n))
        return GraphJet(point=p, u=float(self.u[i]), u_alpha=self.u_alpha[i],
                        u_alphabeta=self.u_alphabeta[i], pot=pot)


def _batch_of_one(j: GraphJet) -> BatchJets:
    return BatchJets(
        x=j.point.x[None, :], one_minus_sq=np.array([j.point.one_minus_sq]),
        rho=np.array([j.pot.rho]), rho_alpha=j.pot.rho_alpha[None, :],
        u=np.array([j.u]), u_alpha=j.u_alpha[None, :],
        u_alphabeta=j.u_alphabeta[None, :, :])


def w_batch(b: BatchJets) -> np.ndarray:
    """W = sqrt(1 + rho^2 |grad u|^2), stable for rho|grad u| up to ~1e8."""
    v = b.rho[:, None] * b.u_alpha
    return np.sqrt(1.0 + np.einsum("ia,ia->i", v, v))


def newton_killing_batch(b: BatchJets) -> np.ndarray:
    """(G X^T)_a = rho^3/W^3 (u_bb u_a - u_ab u_b) + rho^2/W^3 (r_b u_a u_b - r_a u_b u_b)."""
    rho = b.rho
    w3 = w_batch(b) ** 3
    tr_u = np.einsum("iaa->i", b.u_alphabeta)
    uu = np.einsum("ia,ia->i", b.u_alpha, b.u_alpha)
    ru = np.einsum("ia,ia->i", b.rho_alpha, b.u_alpha)
    hess_u = np.einsum("iab,ib->ia", b.u_alphabeta, b.u_alpha)
    first = tr_u[:, None] * b.u_alpha - hess_u
    second = ru[:, None] * b.u_alpha - uu[:, None] * b.rho_alpha
    return (rho**3 / w3)[:, None] * first + (rho**2 / w3)[:, None] * second


def second_fundamental_batch(b: BatchJets):
    """(W, S) with W S_bc = rho u_bc + r_b u_c + r_c u_b + rho^2 u_b u_c <grad rho, grad u>."""
    W = w_batch(b)
    ru = np.einsum("ia,ia->i", b.rho_alpha, b.u_alpha)
    outer_ru = np.einsum("ia,ib->iab", b.rho_alpha, b.u_alpha)
    outer_uu = np.einsum("ia,ib->iab", b.u_alpha, b.u_alpha)
    s = (b.rho[:, None, None] * b.u_alphabeta
         + outer_ru + outer_ru.transpose(0, 2, 1)
         + (b.rho**2 * ru)[:, None, None] * outer_uu)
    return W, s / W[:, None, None]


def curvature_batch(b: BatchJets):
    """(W, S1, S2, Theta) for a batch of jets."""
    W, s = second_fundamental_batch(b)
    v = b.rho[:, None] * b.u_alpha
    ginv = np.eye(b.n)[None, :, :] - np.einsum("ia,ib->iab", v, v) / (W**2)[:, None, None]
    shape_op = np.einsum("iab,ibc->iac", ginv, s)
    s1 = np.einsum("iaa->i", shape_op)
    s2 = 0.5 * (s1**2 - np.einsum("iab,iba->i", shape_op, shape_op))
    return W, s1, s2, b.rho / W


def flux_charge_density_batch(b: BatchJets, phi: np.ndarray, phi_alpha: np.ndarray) -> np.ndarray:
    """Mass charge density J(phi) built from the graph perturbation.

    With e_ab = rho^2 u_a u_b and covariant frame derivatives,

        J(phi)_a = phi (e_ab,b - e_bb,a) - e_ab phi_b + e_bb phi_a.

    ``phi``/``phi_alpha`` may be a single potential ((N,), (N,n)) or a stack
    of k potentials ((k,N), (k,N,n)); the result matches ((N,n) or (k,N,n)).
    """
    rho, u, U = b.rho, b.u_alpha, b.u_alphabeta
    uu = np.einsum("ia,ia->i", u, u)
    ru = np.einsum("ia,ia->i", b.rho_alpha, u)
    tr_u = np.einsum("iaa->i", U)
    hess_u = np.einsum("iab,ib->ia", U, u)
    # div e - d(tr e), covariant product rule with Hess rho = rho * Id
    dive_minus_dtre = ((2.0 * rho * ru)[:, None] * u
                       + (rho**2)[:, None] * (tr_u[:, None] * u - hess_u)
                       - (2.0 * rho * uu)[:, None] * b.rho_alpha)
    single = phi.ndim == 1
    if single:
        phi = phi[None, :]
        phi_alpha = phi_alpha[None, :, :]
    uphi = np.einsum("ia,kia->ki", u, phi_alpha)
    out = (phi[:, :, None] * dive_minus_dtre[None, :, :]
           - (rho**2)[None, :, None] * uphi[:, :, None] * u[None, :, :]
           + (rho**2 * uu)[None, :, None] * phi_alpha)
    return out[0] if single else out


# ---------------------------------------------------------------------------
# pointwise operations
# ---------------------------------------------------------------------------

def extrinsic_data(j: GraphJet) -> ExtrinsicData:
    """All extrinsic data of the graph at the point of ``j``."""
    b = _batch_of_one(j)
    W, s = second_fundamental_batch(b)
    w = float(W[0])
    v = j.pot.rho * j.u_alpha
    n = j.point.n
    g = np.eye(n) + np.outer(v, v)
    g_inv = np.eye(n) - np.outer(v, v) / w**2
    shape_op = g_inv @ s[0]
    s1 = float(np.trace(shape_op))
    s2 = 0.5 * (s1 * s1 - float(np.einsum("ab,ba->", shape_op, shape_op)))
    return ExtrinsicData(W=w, g=g, g_inv=g_inv, S=s[0], B=shape_op, S1=s1, S2=s2,
                         GXT=newton_killing_batch(b)[0], Theta=j.pot.rho / w,
                         dM_density=w)


def newton_killing(j: GraphJet) -> np.ndarray:
    """Frame components of the Newton tensor applied to the tangential
    Killing part, in closed form (no assembly of B)."""
    return newton_killing_batch(_batch_of_one(j))[0]


def scalar_curvature_gauss(j: GraphJet) -> float:
    """Intrinsic scalar curvature via Gauss: R = -n(n-1) + 2 S2."""
    n = j.point.n
    return -n * (n - 1) + scalar_curvature_excess(j)


def scalar_curvature_excess(j: GraphJet) -> float:
    """The excess R + n(n-1) = 2 S2 (vanishes exactly on hyperbolic space)."""
    _, _, s2, _ = curvature_batch(_batch_of_one(j))
    return 2.0 * float(s2[0])


def flux_charge_density(j: GraphJet, phi: float, phi_alpha) -> np.ndarray:
    """Pointwise J(phi); see :func:`flux_charge_density_batch`."""
    b = _batch_of_one(j)
    return flux_charge_density_batch(
        b, np.array([float(phi)]), np.asarray(phi_alpha, float)[None, :])[0]


# ---------------------------------------------------------------------------
# boundary walls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WallSpec:
    """One of the three supported boundary hypersurfaces, itself a graph.

    * ``horosphere``: v = d + sign log rho (umbilic, intrinsically flat);
    * ``geodesic_slice``: v = t0 (totally geodesic copy of H^n);
    * ``sigma_c``: v = c / rho (boundary weight psi_c(rho)).
    """

    kind: str
    d: float = 0.0
    sign: int = 1
    t0: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if self.kind not in ("horosphere", "geodesic_slice", "sigma_c"):
            raise DomainError(f"unknown wall kind {self.kind!r}")
        if self.kind == "horosphere" and self.sign not in (1, -1):
            raise DomainError("horosphere sign must be +1 or -1")
        for v in (self.d, self.t0, self.c):
            if not np.isfinite(v):
                raise DomainError("wall parameters must be finite")

    def value(self, rho):
        if self.kind == "horosphere":
            return self.d + self.sign * np.log(rho)
        if self.kind == "geodesic_slice":
            return self.t0 * np.ones_like(np.asarray(rho, float))
        return self.c / rho

    def frame_gradient(self, rho, rho_alpha):
        if self.kind == "horosphere":
            return self.sign * rho_alpha / rho
        if self.kind == "geodesic_slice":
            return np.zeros_like(rho_alpha)
        return -self.c * rho_alpha / rho**2

    def weight(self, rho):
        """Boundary weight rho / W_wall: 1, rho, or psi_c(rho) by kind."""
        if self.kind == "horosphere":
            return np.ones_like(np.asarray(rho, float))
        if self.kind == "geodesic_slice":
            return np.asarray(rho, float)
        return rho / np.sqrt(1.0 + self.c**2 * (1.0 - rho**-2))

    def radial_metric_rr(self, rho):
        """g_rr of the wall in graph polar coordinates, rho^{-2} + v_n^2."""
        r2 = rho**2 - 1.0
        if self.kind == "horosphere":
            return 1.0 / rho**2 + r2 / rho**2     # == 1: flat in r
        if self.kind == "geodesic_slice":
            return 1.0 / rho**2
        return 1.0 / rho**2 + self.c**2 * r2 / rho**4


@dataclass(frozen=True)
class BoundaryFrameData:
    S1_Gamma: float
    weight: float
    mean_curv_in_M: float
    orthogonality_defect: float


def boundary_frame_data(j: GraphJet, conormal_hint: int, wall: WallSpec,
                        membership_tol: float = 1e-8) -> BoundaryFrameData:
    """Boundary data at a point of the meeting locus Gamma = M  wall.

    The locus through the point is taken to be the coordinate sphere
    {r = const} (rotationally symmetric boundaries).  ``S1_Gamma`` is the mean
    curvature of Gamma inside the wall with respect to its inward unit normal
    scaled by ``conormal_hint``; ``mean_curv_in_M`` is the (positive) mean
    curvature magnitude of Gamma inside the graph; ``orthogonality_defect`` is
    |<N_graph, xi_wall>|, zero exactly when the graph meets the wall at a
    right angle.
    """
    rho = j.pot.rho
    gap = abs(j.u - float(wall.value(rho)))
    if gap > membership_tol:
        raise WallMismatch(
            f"point is off the {wall.kind} wall by {gap:.3e} (tol {membership_tol:.0e})")
    r = float(np.sqrt(max(rho**2 - 1.0, 0.0)))
    if r == 0.0:
        raise DomainError("boundary data undefined on the axis r = 0")
    v_alpha = wall.frame_gradient(rho, j.pot.rho_alpha)
    w_wall = rho / float(wall.weight(rho))
    w_graph = float(w_batch(_batch_of_one(j))[0])
    inner = 1.0 - rho**2 * float(j.u_alpha @ v_alpha)
    defect = abs(inner) / (w_graph * w_wall)
    codim = j.point.n - 1
    s1_gamma = conormal_hint * codim / (r * float(np.sqrt(wall.radial_metric_rr(rho))))
    u_n = float(j.pot.rho_alpha @ j.u_alpha) / r
    mean_in_m = codim / (r * float(np.sqrt(rho**-2 + u_n**2)))
    return BoundaryFrameData(S1_Gamma=s1_gamma, weight=float(wall.weight(rho)),
                             mean_curv_in_M=mean_in_m, orthogonality_defect=defect)
