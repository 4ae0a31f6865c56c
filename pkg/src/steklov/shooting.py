"""Neumann eigenvalues by direct radial shooting.

A deliberately independent check on the Bessel characteristic equation:
integrate the radial ODE

    S'' = -(N-1)/r S' + (l(l+N-2)/r^2 - lambda rho(r)) S

outward from the regular Frobenius solution S ~ r^l and read off the
Neumann defect S'(1). Zeros in lambda are eigenvalues. No Bessel
evaluations are involved, so agreement with the characteristic roots
validates both routes at once.

The integrator is a fixed-step RK4 on a graded mesh: geometric spacing
from r0 = 1e-6 out to a transition radius keeps h/r (the quantity that
drives the local stiffness z = mu h ~ -(l + N - 2) h/r) small and
constant through the power-law regime, then near-uniform spacing covers
the oscillatory part, with a forced node at the density interface so no
step straddles the jump in rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import optimize as _opt

from .errors import BracketError
from .model import ProblemConfig, density_params

__all__ = ["ShootingResult", "shoot", "eigenvalue_by_shooting"]

_R0 = 1e-6
_MIN_GRID = 1000


@dataclass(frozen=True)
class ShootingResult:
    """lam is the queried (or converged) eigenvalue candidate.

    boundary_mismatch is S'(1) after normalizing max |S| = 1 over the
    mesh; it vanishes exactly at eigenvalues.
    """

    lam: float
    boundary_mismatch: float
    grid_size: int


def _mesh(epsilon: float, grid_size: int) -> list[tuple[float, float, int]]:
    """Segments (r_start, r_end, steps): geometric, bulk, annulus."""
    interface = 1.0 - epsilon
    r_t = min(0.05, interface / 4.0)
    n_geo = max(32, grid_size // 8)
    n_rest = grid_size - n_geo
    len_bulk = interface - r_t
    n_bulk = round(n_rest * len_bulk / (len_bulk + epsilon))
    n_bulk = min(max(n_bulk, 16), n_rest - 16)
    n_ann = n_rest - n_bulk
    return [(_R0, r_t, n_geo), (r_t, interface, n_bulk), (interface, 1.0, n_ann)]


def shoot(
    cfg: ProblemConfig, epsilon: float, lam: float, *, grid_size: int = 2000
) -> ShootingResult:
    """One outward integration; the mismatch is the Neumann defect at r=1."""
    if grid_size < _MIN_GRID:
        raise ValueError(f"grid_size must be >= {_MIN_GRID}, got {grid_size}")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    params = density_params(cfg, epsilon)
    N, l = cfg.N, cfg.l
    ang = l * (l + N - 2)
    interface = 1.0 - epsilon

    # S ~ r^l near the origin, scaled so S(r0) = 1
    s = 1.0
    ds = l / _R0
    s_max = abs(s)

    def rhs(r: float, y0: float, y1: float, rho: float) -> tuple[float, float]:
        return y1, -(N - 1) / r * y1 + (ang / (r * r) - lam * rho) * y0

    for seg_start, seg_end, steps in _mesh(epsilon, grid_size):
        rho = params.rho_inner if seg_end <= interface else params.rho_annulus
        if seg_start == _R0:
            # geometric nodes r0 * q^i
            q = (seg_end / seg_start) ** (1.0 / steps)
            nodes = [seg_start * q**i for i in range(steps + 1)]
        else:
            h = (seg_end - seg_start) / steps
            nodes = [seg_start + h * i for i in range(steps + 1)]
        nodes[-1] = seg_end
        for i in range(steps):
            r, h = nodes[i], nodes[i + 1] - nodes[i]
            k1 = rhs(r, s, ds, rho)
            k2 = rhs(r + 0.5 * h, s + 0.5 * h * k1[0], ds + 0.5 * h * k1[1], rho)
            k3 = rhs(r + 0.5 * h, s + 0.5 * h * k2[0], ds + 0.5 * h * k2[1], rho)
            k4 = rhs(r + h, s + h * k3[0], ds + h * k3[1], rho)
            s += h * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0
            ds += h * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0
            if abs(s) > s_max:
                s_max = abs(s)

    return ShootingResult(
        lam=lam, boundary_mismatch=ds / s_max, grid_size=grid_size
    )


def eigenvalue_by_shooting(
    cfg: ProblemConfig,
    epsilon: float,
    bracket: tuple[float, float],
    *,
    grid_size: int = 2000,
    tol: float = 1e-10,
) -> ShootingResult:
    """Brent's method on the boundary mismatch over a bracketing interval."""
    lo, hi = bracket
    if not 0.0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got {bracket}")

    def mismatch(lam: float) -> float:
        return shoot(cfg, epsilon, lam, grid_size=grid_size).boundary_mismatch

    m_lo, m_hi = mismatch(lo), mismatch(hi)
    if m_lo == 0.0:
        root = lo
    elif m_hi == 0.0:
        root = hi
    elif m_lo * m_hi > 0:
        raise BracketError(
            f"no mismatch sign change on [{lo}, {hi}] at eps={epsilon}"
        )
    else:
        root = _opt.brentq(
            mismatch, lo, hi, xtol=tol, rtol=4 * math.ulp(1.0), maxiter=200
        )
    return ShootingResult(
        lam=root, boundary_mismatch=mismatch(root), grid_size=grid_size
    )
