"""Problem geometry and the concentrated mass density.

A total mass M is distributed over the unit ball in R^N: a vanishing
density eps inside radius 1-eps and a large constant value on the
remaining annulus, chosen so the total mass is exactly M for every eps.
Everything downstream (characteristic equation, shooting, asymptotics)
consumes the scalar quantities defined here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ProblemConfig",
    "DensityParams",
    "unit_ball_volume",
    "density_params",
    "wave_arguments",
]


def _ipow(x: float, n: int) -> float:
    """x**n for integer n >= 0 by repeated squaring (no pow-log roundoff)."""
    acc = 1.0
    base = x
    while n:
        if n & 1:
            acc *= base
        base *= base
        n >>= 1
    return acc


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def unit_ball_volume(N: int) -> float:
    """Volume of the unit ball in R^N, pi^(N/2) / Gamma(N/2 + 1).

    Evaluated through exact integer/half-integer closed forms of the Gamma
    function (sqrt(pi) cancels for odd N), so the only rounding is the final
    float division.
    """
    if N < 1:
        raise ValueError(f"dimension must be >= 1, got {N}")
    if N % 2 == 0:
        return _ipow(math.pi, N // 2) / math.factorial(N // 2)
    # odd N: Gamma(N/2 + 1) = N!! * sqrt(pi) / 2^((N+1)/2)
    return _ipow(math.pi, (N - 1) // 2) * float(2 ** ((N + 1) // 2)) / _double_factorial(N)


@dataclass(frozen=True)
class ProblemConfig:
    """Dimension N >= 1, total mass M > 0 and angular index l >= 0."""

    N: int
    M: float
    l: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"dimension must be >= 1, got {self.N}")
        if not self.M > 0:
            raise ValueError(f"mass must be positive, got {self.M}")
        if self.l < 0:
            raise ValueError(f"angular index must be >= 0, got {self.l}")

    @property
    def omega(self) -> float:
        """Measure of the unit ball."""
        return unit_ball_volume(self.N)

    @property
    def sigma(self) -> float:
        """Measure of the unit sphere, N * omega."""
        return self.N * self.omega

    @property
    def rho(self) -> float:
        """Limiting boundary density M / sigma."""
        return self.M / self.sigma

    @property
    def nu(self) -> float:
        """Bessel order (N + 2l - 2)/2 from separation of variables.

        Only meaningful for N >= 2 (the one-dimensional problem is
        trigonometric and never forms this order).
        """
        if self.N < 2:
            raise ValueError("Bessel order is defined for N >= 2 only")
        return (self.N + 2 * self.l - 2) / 2


@dataclass(frozen=True)
class DensityParams:
    """The piecewise-constant density at one value of eps.

    rho_inner = eps on |x| <= 1-eps, rho_annulus on the shell, and
    rho_hat = eps * rho_annulus (the combination that stays finite as
    eps -> 0, with limit M / (N omega)).
    """

    epsilon: float
    rho_inner: float
    rho_annulus: float
    rho_hat: float


def density_params(cfg: ProblemConfig, epsilon: float) -> DensityParams:
    """Density values for the given concentration parameter.

    Closed form only; the defining mass identity
    eps*omega*(1-eps)^N + rho_annulus*omega*(1-(1-eps)^N) = M
    holds to machine precision by construction.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    w = cfg.omega
    core = _ipow(1.0 - epsilon, cfg.N)
    rho_ann = (cfg.M - epsilon * w * core) / (w * (1.0 - core))
    return DensityParams(
        epsilon=epsilon,
        rho_inner=epsilon,
        rho_annulus=rho_ann,
        rho_hat=epsilon * rho_ann,
    )


def wave_arguments(cfg: ProblemConfig, epsilon: float, lam: float) -> tuple[float, float]:
    """Bessel arguments at the interface radius 1-eps.

    a = sqrt(lam*eps)*(1-eps) for the inner solution and
    b = sqrt(lam*rho_annulus)*(1-eps) for the annulus solution.
    The characteristic equation is formulated for nonzero eigenvalues only,
    so lam must be positive.
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    params = density_params(cfg, epsilon)
    a = math.sqrt(lam * epsilon) * (1.0 - epsilon)
    b = math.sqrt(lam * params.rho_annulus) * (1.0 - epsilon)
    return a, b
