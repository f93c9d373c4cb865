"""Independent finite-difference verification engine.

Everything here differentiates the *induced coordinate metric* of a graph
family, never the covariant-jet code paths, so it provides an independent
check of the frame formulas: intrinsic scalar curvature (Christoffel/Ricci
assembly from FD metric derivatives), intrinsic divergences, and the residual
suite for the three identities the rest of the package relies on:

* flux:   div_g(G X^T) - 2 S2 Theta          (finite differences vs algebra)
* recipe: J(rho) - W^3 (G X^T)               (two algebraic code paths)
* gauss:  R_fd - (-n(n-1) + 2 S2)            (finite differences vs Gauss)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StepTooLargeNearBoundary
from .graph_geometry import (curvature_batch, flux_charge_density_batch,
                             newton_killing, w_batch)
from .model_space import DiskPoint

_SCHEMES = ("central-2", "central-4")


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference scheme: coordinate step, stencil order, Richardson levels."""

    step: float = 1e-3
    scheme: str = "central-4"
    richardson_levels: int = 1

    def __post_init__(self):
        if not (1e-6 <= self.step <= 1e-1):
            raise DomainError(f"fd step must lie in [1e-6, 1e-1], got {self.step}")
        if self.scheme not in _SCHEMES:
            raise DomainError(f"fd scheme must be one of {_SCHEMES}")
        if self.richardson_levels < 0:
            raise DomainError("richardson_levels must be >= 0")

    @property
    def order(self) -> int:
        return 2 if self.scheme == "central-2" else 4


@dataclass(frozen=True)
class IdentityResiduals:
    flux: float
    recipe: np.ndarray
    gauss: float


# ---------------------------------------------------------------------------
# stencils
# ---------------------------------------------------------------------------

def _stencil(scheme):
    if scheme == "central-2":
        return np.array([-1.0, 1.0]), np.array([-0.5, 0.5])
    return np.array([-2.0, -1.0, 1.0, 2.0]), np.array([1.0, -8.0, 8.0, -1.0]) / 12.0


def _second_stencil(scheme):
    if scheme == "central-2":
        return np.array([-1.0, 0.0, 1.0]), np.array([1.0, -2.0, 1.0])
    return (np.array([-2.0, -1.0, 0.0, 1.0, 2.0]),
            np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0)


def _partial(f, x, axis, h, scheme):
    offs, wts = _stencil(scheme)
    acc = None
    for o, w in zip(offs, wts):
        xs = np.array(x, dtype=float)
        xs[axis] += o * h
        term = w * np.asarray(f(xs))
        acc = term if acc is None else acc + term
    return acc / h


def _partial2(f, x, ax1, ax2, h, scheme):
    if ax1 == ax2:
        offs, wts = _second_stencil(scheme)
        acc = None
        for o, w in zip(offs, wts):
            xs = np.array(x, dtype=float)
            xs[ax1] += o * h
            term = w * np.asarray(f(xs))
            acc = term if acc is None else acc + term
        return acc / (h * h)
    offs, wts = _stencil(scheme)
    acc = None
    for o1, w1 in zip(offs, wts):
        for o2, w2 in zip(offs, wts):
            xs = np.array(x, dtype=float)
            xs[ax1] += o1 * h
            xs[ax2] += o2 * h
            term = (w1 * w2) * np.asarray(f(xs))
            acc = term if acc is None else acc + term
    return acc / (h * h)


def _richardson(fn_of_h, h, order, levels):
    vals = [fn_of_h(h / 2**k) for k in range(levels + 1)]
    for m in range(levels):
        p = order + 2 * m
        fac = 2.0**p
        vals = [(fac * vals[i + 1] - vals[i]) / (fac - 1.0) for i in range(len(vals) - 1)]
    return vals[0]


def _guard_margins(family, x, cfg: FDConfig):
    x = np.asarray(x, dtype=float)
    margin = 4.0 * cfg.step
    if np.linalg.norm(x) + margin >= 1.0:
        raise StepTooLargeNearBoundary(
            f"fd stencil of step {cfg.step:g} reaches the disk boundary")
    if family.min_radius > 0.0:
        rho_min = np.hypot(family.min_radius, 1.0)
        x_inner = family.min_radius / (rho_min + 1.0)
        if np.linalg.norm(x) - margin <= x_inner:
            raise StepTooLargeNearBoundary(
                f"fd stencil of step {cfg.step:g} reaches the inner boundary")
    return x


# ---------------------------------------------------------------------------
# oracle operations
# ---------------------------------------------------------------------------

def coordinate_metric(family, x) -> np.ndarray:
    """Induced metric in disk coordinates,
    g_ij = (2/(1-|x|^2))^2 delta_ij + rho^2 du_i du_j."""
    x = np.asarray(x, dtype=float)
    p = DiskPoint(x)
    j = family.jets(p)
    lam = 0.5 * p.one_minus_sq
    du = j.u_alpha / lam                     # coordinate gradient
    return np.eye(x.size) / lam**2 + j.pot.rho**2 * np.outer(du, du)


def _curvature_from_metric(gfun, x, h, scheme):
    """Scalar curvature at x from FD derivatives of the coordinate metric.

    With dg[e,i,j] = d_e g_ij and ddg[e,k,i,j] = d_e d_k g_ij:
        inner[b,d,c]    = d_b g_dc + d_c g_db - d_d g_bc
        Gamma^a_bc      = 1/2 g^{ad} inner[b,d,c]
        R_bc            = d_a G^a_bc - d_c G^a_ba + G^a_ae G^e_bc - G^a_ce G^e_ba
    """
    n = x.size
    ginv = np.linalg.inv(np.asarray(gfun(x)))
    dg = np.stack([_partial(gfun, x, k, h, scheme) for k in range(n)])
    ddg = np.empty((n, n, n, n))
    for k in range(n):
        for l in range(k, n):
            val = _partial2(gfun, x, k, l, h, scheme)
            ddg[k, l] = val
            ddg[l, k] = val
    inner = dg + dg.transpose(2, 1, 0) - dg.transpose(1, 0, 2)
    dinner = ddg + ddg.transpose(0, 3, 2, 1) - ddg.transpose(0, 2, 1, 3)
    gamma = 0.5 * np.einsum("ad,bdc->abc", ginv, inner)
    dginv = -np.einsum("ab,ebc,cd->ead", ginv, dg, ginv)
    dgamma = 0.5 * (np.einsum("ead,bdc->eabc", dginv, inner)
                    + np.einsum("ad,ebdc->eabc", ginv, dinner))
    ricci = (np.einsum("aabc->bc", dgamma)
             - np.einsum("caba->cb", dgamma).T
             + np.einsum("aae,ebc->bc", gamma, gamma)
             - np.einsum("ace,eba->bc", gamma, gamma))
    return float(np.einsum("bc,bc->", ginv, ricci))


def scalar_curvature_fd(family, x, cfg: FDConfig = FDConfig()) -> float:
    """Scalar curvature of the induced metric by finite differences."""
    x = _guard_margins(family, x, cfg)
    gfun = lambda y: coordinate_metric(family, y)
    return _richardson(lambda h: _curvature_from_metric(gfun, x, h, cfg.scheme),
                       cfg.step, cfg.order, cfg.richardson_levels)


def divergence_fd(family, field, x, cfg: FDConfig = FDConfig()) -> float:
    """div_g V = (det g)^(-1/2) d_i(sqrt(det g) V^i) for a tangent field.

    ``field(p: DiskPoint) -> (n,)`` returns frame components; the coordinate
    components are lambda * frame on the graph chart.
    """
    x = _guard_margins(family, x, cfg)

    def flux_vec(y):
        p = DiskPoint(y)
        lam = 0.5 * p.one_minus_sq
        g = coordinate_metric(family, y)
        return np.sqrt(np.linalg.det(g)) * lam * np.asarray(field(p))

    def div_at(h):
        total = 0.0
        for i in range(x.size):
            total += _partial(lambda y: flux_vec(y)[i], x, i, h, cfg.scheme)
        return total

    det0 = np.linalg.det(coordinate_metric(family, x))
    return _richardson(div_at, cfg.step, cfg.order, cfg.richardson_levels) / np.sqrt(det0)


def residual_suite(family, x, cfg: FDConfig = FDConfig()) -> IdentityResiduals:
    """Absolute residuals of the flux, recipe, and Gauss identities at x."""
    x = _guard_margins(family, x, cfg)
    p = DiskPoint(x)
    b = family.jets_batch(p.x[None, :], np.array([p.one_minus_sq]))
    W, s1, s2, theta = curvature_batch(b)
    n = x.size

    flux_lhs = divergence_fd(family, lambda q: newton_killing(family.jets(q)), x, cfg)
    flux = abs(flux_lhs - 2.0 * float(s2[0] * theta[0]))

    gxt = newton_killing(family.jets(p))
    j_rho = flux_charge_density_batch(b, b.rho, b.rho_alpha)[0]
    recipe = np.abs(j_rho - float(W[0]) ** 3 * gxt)

    r_fd = scalar_curvature_fd(family, x, cfg)
    gauss = abs(r_fd - (-n * (n - 1) + 2.0 * float(s2[0])))
    return IdentityResiduals(flux=flux, recipe=recipe, gauss=gauss)
