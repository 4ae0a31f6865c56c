"""Characteristic equation of the concentrated-density Neumann problem.

Separating variables for -Delta u = lambda rho_eps u with a Neumann
boundary on the unit ball, the radial factor is a Bessel function of order
nu = (N + 2l - 2)/2 in each density region; matching value and slope at the
interface r = 1-eps and imposing the boundary condition collapses to one
transcendental equation F(lambda, eps) = 0 built from cross-products of
J_nu, Y_nu at b and b/(1-eps), weighted by J_nu(a) and (a/b) J_nu'(a):

    F = (1 - N/2) P1(a, b) + (b/(1-eps)) P2(a, b)

with a = sqrt(lambda eps)(1-eps), b = sqrt(lambda rho_annulus)(1-eps).
Each nonzero eigenvalue branch lambda_l(eps) is a root curve of F anchored
at the Steklov value lambda_l as eps -> 0. This module provides the
equation, its truncated small-eps polynomial form with the remainder
rescaling, root finding, predictor-corrector continuation, radial
eigenfunction assembly, and the one-dimensional (trigonometric) analogue.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath as mp
from scipy import optimize as _opt
from scipy import special as _sp

from .errors import BracketError, IterationLimitError
from .model import ProblemConfig, density_params, wave_arguments
from .spectrum import SteklovEigenvalue, slope_at_zero, steklov_eigenvalue

__all__ = [
    "DEFAULT_ROOT_TOL",
    "BranchPoint",
    "BranchTable",
    "RadialProfile",
    "characteristic",
    "characteristic_1d",
    "truncated_characteristic",
    "slope_from_truncated",
    "slope_at_zero_1d",
    "remainder_scaling",
    "find_root",
    "continue_branch",
    "trace_family",
    "scan_roots",
    "slope_estimate",
    "radial_profile",
    "anchor_eigenvalue",
    "write_csv",
    "write_points_csv",
    "sidecar_metadata",
]

DEFAULT_ROOT_TOL = 1e-11

# bracket scan resolution and expansion schedule for the corrector
_SCAN_POINTS = 25
_EXPANSIONS = 4
_MAX_HALVINGS = 10


def _root_tol(value: float | None) -> float:
    return DEFAULT_ROOT_TOL if value is None else float(value)


@dataclass(frozen=True)
class BranchPoint:
    """One converged root (eps, lambda) of the characteristic equation.

    residual is |F| divided by the magnitude of F's largest constituent
    term, i.e. directly comparable against root_tol. The analytic l = 0
    principal branch carries lambda = 0 with residual 0.
    """

    epsilon: float
    lam: float
    residual: float
    l: int
    N: int
    M: float


@dataclass(frozen=True)
class BranchTable:
    cfg: ProblemConfig
    points: tuple[BranchPoint, ...]
    anchor: SteklovEigenvalue
    truncated: bool = False


# ---------------------------------------------------------------------------
# the characteristic equation


def _characteristic_terms(
    cfg: ProblemConfig, epsilon: float, lam: float
) -> tuple[float, float]:
    """(F, scale): the characteristic value and its largest term magnitude.

    The scale makes residuals meaningful: at a root the weighted summands
    cancel each other, so |F|/scale is the natural convergence measure.
    """
    if cfg.N < 2:
        raise ValueError("use characteristic_1d for N = 1")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    nu = cfg.nu
    a, b = wave_arguments(cfg, epsilon, lam)
    c = b / (1.0 - epsilon)
    ja, jpa = float(_sp.jv(nu, a)), float(_sp.jvp(nu, a))
    jb, jpb = float(_sp.jv(nu, b)), float(_sp.jvp(nu, b))
    yb, ypb = float(_sp.yv(nu, b)), float(_sp.yvp(nu, b))
    jc, jpc = float(_sp.jv(nu, c)), float(_sp.jvp(nu, c))
    yc, ypc = float(_sp.yv(nu, c)), float(_sp.yvp(nu, c))
    w1 = 1.0 - cfg.N / 2.0
    w2 = c
    ratio = (a / b) * jpa
    # P1: value cross-products at (b, b/(1-eps)); P2: derivative versions
    p1_1 = ja * (ypb * jc - jpb * yc)
    p1_2 = ratio * (jb * yc - yb * jc)
    p2_1 = ja * (ypb * jpc - jpb * ypc)
    p2_2 = ratio * (jb * ypc - yb * jpc)
    value = w1 * (p1_1 + p1_2) + w2 * (p2_1 + p2_2)
    # Each summand is a cross-product <(Y', -J')(b), (J, Y)(c)> whose
    # attainable magnitude is the product of the factor moduli. Measuring
    # residuals against the largest attainable summand keeps the measure
    # stable when a factor sits at an accidental zero (near eps -> 1 the
    # root locks b/(1-eps) onto a zero of J', where every summand value
    # collapses while dF/dlambda stays finite, so a value-based scale
    # would demand residuals below what float64 lambda can express).
    mb = math.hypot(jb, yb)
    mpb = math.hypot(jpb, ypb)
    mc = math.hypot(jc, yc)
    mpc = math.hypot(jpc, ypc)
    scale = max(
        abs(w1 * ja) * mpb * mc,
        abs(w1 * ratio) * mb * mc,
        abs(w2 * ja) * mpb * mpc,
        abs(w2 * ratio) * mb * mpc,
        1e-300,
    )
    return value, scale


def characteristic(cfg: ProblemConfig, epsilon: float, lam: float) -> float:
    """F(lambda, eps) whose zeros are the nonzero Neumann eigenvalues."""
    return _characteristic_terms(cfg, epsilon, lam)[0]


def _characteristic_1d_terms(
    M: float, epsilon: float, lam: float
) -> tuple[float, float]:
    if not M > 0:
        raise ValueError(f"mass must be positive, got {M}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    rho_ann = M / (2.0 * epsilon) - 1.0 + epsilon
    u = 2.0 * math.sqrt(lam * epsilon) * (1.0 - epsilon)
    v = 2.0 * epsilon * math.sqrt(lam * rho_ann)
    t1 = 2.0 * math.sqrt(epsilon * rho_ann) * math.cos(u) * math.sin(v)
    t2 = (
        -M / (2.0 * epsilon)
        + 1.0
        + (M / (2.0 * epsilon) - 1.0 + 2.0 * epsilon) * math.cos(v)
    ) * math.sin(u)
    # attainable magnitudes of the trigonometric summands (unit phase)
    scale = max(
        2.0 * math.sqrt(epsilon * rho_ann),
        M / (2.0 * epsilon),
        abs(M / (2.0 * epsilon) - 1.0 + 2.0 * epsilon),
        1e-300,
    )
    return t1 + t2, scale


def characteristic_1d(M: float, epsilon: float, lam: float) -> float:
    """The interval analogue: mass M on (-1, 1), density eps in the bulk.

    Roots give the nonzero Neumann eigenvalues; the branch anchored at
    lambda_1 = 2/M survives the eps -> 0 limit, all higher ones diverge.
    """
    return _characteristic_1d_terms(M, epsilon, lam)[0]


def truncated_characteristic(cfg: ProblemConfig, epsilon: float, lam: float) -> float:
    """The explicit part of the small-eps expansion of the rescaled F.

    lambda^2 eps (M/(3 N omega) - 1/(nu(1+nu)))
      + lambda eps (N/2 - nu + (2-N) N omega / (2 nu (1+nu) M))
      - 2 lambda + 2 N omega l / M
      - (2 N omega l / M)((N-1)/2 - omega/M - nu) eps

    linear in eps; the dropped remainder is o(eps) uniformly on compact
    lambda intervals (see remainder_scaling). Undefined when nu = 0
    (denominators vanish), which happens only for N = 2, l = 0.
    """
    if cfg.N < 2:
        raise ValueError("truncated form implemented for N >= 2")
    nu = cfg.nu
    if nu == 0:
        raise ValueError("truncated form undefined at nu = 0 (N = 2, l = 0)")
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")
    w = cfg.omega
    N, M, l = cfg.N, cfg.M, cfg.l
    return (
        lam * lam * epsilon * (M / (3.0 * N * w) - 1.0 / (nu * (1.0 + nu)))
        + lam
        * epsilon
        * (N / 2.0 - nu + (2.0 - N) * N * w / (2.0 * nu * (1.0 + nu) * M))
        - 2.0 * lam
        + 2.0 * N * w * l / M
        - (2.0 * N * w * l / M) * ((N - 1) / 2.0 - w / M - nu) * epsilon
    )


def slope_from_truncated(cfg: ProblemConfig) -> float:
    """Branch slope at eps = 0 via the implicit function theorem.

    The truncated form is linear in eps with d/d(lambda) = -2 at eps = 0,
    so the slope is (the eps-coefficient at lambda_l) / 2. Independent
    route from the closed slope formula; the two must agree to roundoff.
    """
    nu = cfg.nu
    if nu == 0:
        raise ValueError("truncated form undefined at nu = 0 (N = 2, l = 0)")
    w = cfg.omega
    N, M, l = cfg.N, cfg.M, cfg.l
    lam = N * w * l / M
    eps_coeff = (
        lam * lam * (M / (3.0 * N * w) - 1.0 / (nu * (1.0 + nu)))
        + lam * (N / 2.0 - nu + (2.0 - N) * N * w / (2.0 * nu * (1.0 + nu) * M))
        - (2.0 * N * w * l / M) * ((N - 1) / 2.0 - w / M - nu)
    )
    return eps_coeff / 2.0


def slope_at_zero_1d(M: float) -> float:
    """First-order slope of the surviving 1D branch, (2/3)(lam1 + lam1^2)."""
    lam1 = 2.0 / M
    return (2.0 / 3.0) * (lam1 + lam1 * lam1)


def remainder_scaling(
    cfg: ProblemConfig,
    lam: float,
    eps_grid: Sequence[float],
    *,
    dps: int = 40,
) -> list[tuple[float, float]]:
    """|remainder| of the truncated expansion over an eps grid.

    Rescales the full characteristic exactly as the expansion derivation
    does (divide by J_nu'(a), multiply by pi nu (1-eps)/b1 with
    b1 = b sqrt(eps/lambda), divide by eps) and subtracts the truncated
    polynomial. Evaluated in extended precision: the rescaling amplifies
    by eps^(-3/2), so float64 would run out of headroom near the bottom
    of the grid. Grid entries must sit in the asymptotic window (0, 0.2).
    """
    for e in eps_grid:
        if not 0.0 < e < 0.2:
            raise ValueError(f"eps grid entries must lie in (0, 0.2), got {e}")
    if cfg.nu == 0:
        raise ValueError("truncated form undefined at nu = 0 (N = 2, l = 0)")
    out: list[tuple[float, float]] = []
    with mp.workdps(dps):
        N = mp.mpf(cfg.N)
        M = mp.mpf(cfg.M)
        l = mp.mpf(cfg.l)
        nu = mp.mpf(cfg.nu)
        w = mp.pi ** (N / 2) / mp.gamma(N / 2 + 1)
        lam_mp = mp.mpf(lam)
        for e in eps_grid:
            eps = mp.mpf(e)
            core = (1 - eps) ** cfg.N
            rho_ann = (M - eps * w * core) / (w * (1 - core))
            a = mp.sqrt(lam_mp * eps) * (1 - eps)
            b = mp.sqrt(lam_mp * rho_ann) * (1 - eps)
            c = b / (1 - eps)
            ja, jpa = mp.besselj(nu, a), mp.besselj(nu, a, 1)
            jb, jpb = mp.besselj(nu, b), mp.besselj(nu, b, 1)
            yb, ypb = mp.bessely(nu, b), mp.bessely(nu, b, 1)
            jc, jpc = mp.besselj(nu, c), mp.besselj(nu, c, 1)
            yc, ypc = mp.bessely(nu, c), mp.bessely(nu, c, 1)
            p1 = ja * (ypb * jc - jpb * yc) + (a / b) * jpa * (jb * yc - yb * jc)
            p2 = ja * (ypb * jpc - jpb * ypc) + (a / b) * jpa * (jb * ypc - yb * jpc)
            F = (1 - N / 2) * p1 + c * p2
            b1 = b * mp.sqrt(eps / lam_mp)
            rescaled = F / jpa * mp.pi * nu * (1 - eps) / (eps * b1)
            trunc = (
                lam_mp**2 * eps * (M / (3 * N * w) - 1 / (nu * (1 + nu)))
                + lam_mp * eps * (N / 2 - nu + (2 - N) * N * w / (2 * nu * (1 + nu) * M))
                - 2 * lam_mp
                + 2 * N * w * l / M
                - (2 * N * w * l / M) * ((N - 1) / 2 - w / M - nu) * eps
            )
            out.append((float(e), float(abs(rescaled - trunc))))
    return out


# ---------------------------------------------------------------------------
# root finding and continuation


def _char_fn(cfg: ProblemConfig, epsilon: float) -> Callable[[float], tuple[float, float]]:
    if cfg.N == 1:
        return lambda lam: _characteristic_1d_terms(cfg.M, epsilon, lam)
    return lambda lam: _characteristic_terms(cfg, epsilon, lam)


def _polish_root(
    fn: Callable[[float], tuple[float, float]], root: float
) -> tuple[float, float]:
    """Walk neighboring floats to the minimal normalized residual.

    The characteristic is steep enough that one ulp of lambda can move
    |F|/scale by more than root_tol, so the iterate the bracketing solver
    stops on is not necessarily the best representable root.
    """
    value, scale = fn(root)
    best_res, best_x = abs(value) / scale, root
    for direction in (math.inf, -math.inf):
        x = root
        rising = 0
        for _ in range(64):
            x = math.nextafter(x, direction)
            value, scale = fn(x)
            res = abs(value) / scale
            if res < best_res:
                best_res, best_x = res, x
                rising = 0
            else:
                rising += 1
                if rising >= 3:
                    break
    return best_x, best_res


def find_root(
    cfg: ProblemConfig,
    epsilon: float,
    bracket: tuple[float, float],
    *,
    root_tol: float | None = None,
) -> BranchPoint:
    """Brent's method on the bracketing interval, residual-checked.

    The bracket endpoints must produce a sign change; convergence is
    accepted only when |F| at the root is below root_tol relative to the
    largest constituent term of F.
    """
    tol = _root_tol(root_tol)
    lo, hi = bracket
    if not 0.0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got {bracket}")
    fn = _char_fn(cfg, epsilon)
    f_lo, _ = fn(lo)
    f_hi, _ = fn(hi)
    if f_lo == 0.0:
        root = lo
    elif f_hi == 0.0:
        root = hi
    elif f_lo * f_hi > 0:
        raise BracketError(
            f"no sign change on [{lo}, {hi}] at eps={epsilon} "
            f"(F={f_lo:.3e} and {f_hi:.3e})"
        )
    else:
        root, result = _opt.brentq(
            lambda x: fn(x)[0],
            lo,
            hi,
            xtol=1e-15,
            rtol=4 * math.ulp(1.0),
            maxiter=200,
            full_output=True,
        )
        if not result.converged:
            raise IterationLimitError(
                f"root iteration did not converge on [{lo}, {hi}]", best=root
            )
    root, residual = _polish_root(fn, root)
    if residual > tol:
        raise IterationLimitError(
            f"residual {residual:.3e} above tolerance {tol:.1e} at "
            f"eps={epsilon}, lambda={root}",
            best=root,
        )
    return BranchPoint(
        epsilon=epsilon, lam=root, residual=residual, l=cfg.l, N=cfg.N, M=cfg.M
    )


def _bracketed_root_near(
    cfg: ProblemConfig,
    epsilon: float,
    prediction: float,
    half_width: float,
    *,
    root_tol: float | None,
) -> BranchPoint | None:
    """Scan a widening window around the prediction, pick the nearest root."""
    fn = _char_fn(cfg, epsilon)
    w = half_width
    for _ in range(_EXPANSIONS):
        lo = max(prediction - w, 1e-10)
        hi = prediction + w
        xs = [lo + (hi - lo) * i / (_SCAN_POINTS - 1) for i in range(_SCAN_POINTS)]
        vals = [fn(x)[0] for x in xs]
        candidates = [
            (abs(0.5 * (xs[i] + xs[i + 1]) - prediction), xs[i], xs[i + 1])
            for i in range(len(xs) - 1)
            if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0
        ]
        if candidates:
            _, lo_c, hi_c = min(candidates)
            return find_root(cfg, epsilon, (lo_c, hi_c), root_tol=root_tol)
        w *= math.sqrt(2.0)
    return None


def anchor_eigenvalue(cfg: ProblemConfig) -> SteklovEigenvalue:
    """Steklov anchor of the branch; N = 1 gets the interval spectrum."""
    if cfg.N == 1:
        if cfg.l != 1:
            raise ValueError(
                "only the l = 1 interval branch survives the limit; "
                f"got l = {cfg.l}"
            )
        lam1 = 2.0 / cfg.M
        return SteklovEigenvalue(
            l=1, value=lam1, multiplicity=1, slope=slope_at_zero_1d(cfg.M)
        )
    return steklov_eigenvalue(cfg)


def trace_family(
    cfg: ProblemConfig,
    start: tuple[float, float],
    eps_values: Sequence[float],
    *,
    slope0: float | None = None,
    lam_scale: float | None = None,
    lam_max: float | None = None,
    root_tol: float | None = None,
) -> tuple[list[BranchPoint], bool]:
    """Predictor-corrector continuation from a known point.

    Walks eps_values (monotone, either direction) from start = (eps, lam);
    each step predicts linearly with the latest secant slope (slope0 seeds
    the first step), brackets around the prediction and corrects with
    find_root. Bracket failure halves the step toward the target up to 10
    times. Returns (points at the requested eps values, truncated flag);
    truncated is set when the family is lost or leaves (0, lam_max].
    """
    e_prev, lam_prev = start
    slope = 0.0 if slope0 is None else slope0
    scale = abs(lam_prev) if lam_scale is None else lam_scale
    points: list[BranchPoint] = []
    for e_target in eps_values:
        halvings = 0
        pt: BranchPoint | None = None
        while pt is None:
            # aim at the target; failures pull the intermediate stop
            # halfway back toward the last converged point
            e_try = e_target
            while True:
                d_eps = e_try - e_prev
                prediction = lam_prev + slope * d_eps
                half_width = max(0.25 * scale, 10.0 * abs(slope) * abs(d_eps))
                found = _bracketed_root_near(
                    cfg, e_try, prediction, half_width, root_tol=root_tol
                )
                if found is not None:
                    break
                halvings += 1
                if halvings > _MAX_HALVINGS:
                    return points, True
                e_try = 0.5 * (e_prev + e_try)
            if d_eps != 0.0:
                slope = (found.lam - lam_prev) / d_eps
            e_prev, lam_prev = e_try, found.lam
            if e_try == e_target:
                pt = found
        points.append(pt)
        if lam_max is not None and pt.lam > lam_max:
            return points, True
    return points, False


def continue_branch(
    cfg: ProblemConfig,
    eps_max: float,
    steps: int,
    *,
    root_tol: float | None = None,
    lam_max: float | None = None,
) -> BranchTable:
    """Trace the anchored branch over the uniform grid (eps0, eps_max].

    eps0 = eps_max/steps. The l = 0 principal branch is identically zero
    and is emitted analytically; everything else starts at the Steklov
    anchor with the closed slope as first predictor.
    """
    if not 0.0 < eps_max < 1.0:
        raise ValueError(f"eps_max must lie in (0, 1), got {eps_max}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    anchor = anchor_eigenvalue(cfg)
    grid = [eps_max * i / steps for i in range(1, steps + 1)]
    if cfg.N >= 2 and cfg.l == 0:
        pts = tuple(
            BranchPoint(epsilon=e, lam=0.0, residual=0.0, l=0, N=cfg.N, M=cfg.M)
            for e in grid
        )
        return BranchTable(cfg=cfg, points=pts, anchor=anchor, truncated=False)
    points, truncated = trace_family(
        cfg,
        start=(0.0, anchor.value),
        eps_values=grid,
        slope0=anchor.slope,
        lam_scale=anchor.value,
        lam_max=lam_max,
        root_tol=root_tol,
    )
    return BranchTable(
        cfg=cfg, points=tuple(points), anchor=anchor, truncated=truncated
    )


def scan_roots(
    cfg: ProblemConfig,
    epsilon: float,
    lam_max: float,
    *,
    samples: int = 800,
    lam_min: float = 1e-3,
    root_tol: float | None = None,
) -> list[BranchPoint]:
    """All roots of the characteristic in (lam_min, lam_max) at fixed eps.

    Uniform sign scan plus Brent refinement; used to seed the divergent
    families that have no eps -> 0 anchor.
    """
    fn = _char_fn(cfg, epsilon)
    xs = [lam_min + (lam_max - lam_min) * i / samples for i in range(samples + 1)]
    vals = [fn(x)[0] for x in xs]
    roots: list[BranchPoint] = []
    for i in range(samples):
        if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0:
            roots.append(
                find_root(cfg, epsilon, (xs[i], xs[i + 1]), root_tol=root_tol)
            )
    return roots


def slope_estimate(
    cfg: ProblemConfig,
    eps_list: Sequence[float],
    *,
    root_tol: float | None = None,
) -> list[tuple[float, float]]:
    """Difference quotients (lambda(eps) - lambda_l)/eps toward the slope.

    Each eps gets its own short continuation from the anchor so the
    quotient always refers to the anchored branch.
    """
    anchor = anchor_eigenvalue(cfg)
    if cfg.N >= 2 and cfg.l == 0:
        return [(float(e), 0.0) for e in eps_list]
    out: list[tuple[float, float]] = []
    for e in eps_list:
        if not 0.0 < e <= 0.05:
            raise ValueError(f"quotients are meaningful for eps in (0, 0.05], got {e}")
        points, truncated = trace_family(
            cfg,
            start=(0.0, anchor.value),
            eps_values=[e],
            slope0=anchor.slope,
            lam_scale=anchor.value,
            root_tol=root_tol,
        )
        if truncated or not points:
            raise BracketError(f"branch lost on the way to eps={e}")
        out.append((float(e), (points[0].lam - anchor.value) / e))
    return out


# ---------------------------------------------------------------------------
# radial eigenfunction


@dataclass(frozen=True)
class RadialProfile:
    """Radial factor S(r) of the eigenfunction at one branch point.

    Inside: r^(1-N/2) J_nu(sqrt(lambda eps) r); on the annulus the same
    power times alpha J_nu + beta Y_nu at sqrt(lambda rho_annulus) r. The
    matching coefficients fold in the Wronskian 2/(pi b), making S and S'
    continuous at r = 1-eps by construction.
    """

    cfg: ProblemConfig
    epsilon: float
    lam: float
    alpha: float
    beta: float

    @property
    def _power(self) -> float:
        return 1.0 - self.cfg.N / 2.0

    @property
    def _k_inner(self) -> float:
        return math.sqrt(self.lam * self.epsilon)

    @property
    def _k_annulus(self) -> float:
        rho_ann = density_params(self.cfg, self.epsilon).rho_annulus
        return math.sqrt(self.lam * rho_ann)

    def value(self, r: float) -> float:
        if not 0.0 < r <= 1.0:
            raise ValueError(f"radius must lie in (0, 1], got {r}")
        nu, p = self.cfg.nu, self._power
        if r <= 1.0 - self.epsilon:
            return r**p * float(_sp.jv(nu, self._k_inner * r))
        k = self._k_annulus
        return r**p * (
            self.alpha * float(_sp.jv(nu, k * r))
            + self.beta * float(_sp.yv(nu, k * r))
        )

    def derivative(self, r: float) -> float:
        if not 0.0 < r <= 1.0:
            raise ValueError(f"radius must lie in (0, 1], got {r}")
        nu, p = self.cfg.nu, self._power
        if r <= 1.0 - self.epsilon:
            k = self._k_inner
            return p * r ** (p - 1.0) * float(_sp.jv(nu, k * r)) + r**p * k * float(
                _sp.jvp(nu, k * r)
            )
        k = self._k_annulus
        combo = self.alpha * float(_sp.jv(nu, k * r)) + self.beta * float(
            _sp.yv(nu, k * r)
        )
        combo_p = self.alpha * float(_sp.jvp(nu, k * r)) + self.beta * float(
            _sp.yvp(nu, k * r)
        )
        return p * r ** (p - 1.0) * combo + r**p * k * combo_p


def radial_profile(
    cfg: ProblemConfig,
    point: BranchPoint,
    *,
    root_tol: float | None = None,
) -> RadialProfile:
    """Assemble the radial eigenfunction at a converged branch point."""
    if cfg.N < 2:
        raise ValueError("radial profiles implemented for N >= 2")
    tol = _root_tol(root_tol)
    if point.residual > tol:
        raise ValueError(
            f"branch point not converged: residual {point.residual:.3e} > {tol:.1e}"
        )
    nu = cfg.nu
    a, b = wave_arguments(cfg, point.epsilon, point.lam)
    ja, jpa = float(_sp.jv(nu, a)), float(_sp.jvp(nu, a))
    jb, jpb = float(_sp.jv(nu, b)), float(_sp.jvp(nu, b))
    yb, ypb = float(_sp.yv(nu, b)), float(_sp.yvp(nu, b))
    pref = math.pi * b / 2.0
    alpha = pref * (ja * ypb - (a / b) * jpa * yb)
    beta = pref * ((a / b) * jb * jpa - jpb * ja)
    return RadialProfile(
        cfg=cfg, epsilon=point.epsilon, lam=point.lam, alpha=alpha, beta=beta
    )


# ---------------------------------------------------------------------------
# table export


def write_points_csv(
    points: Sequence[BranchPoint], path: str | os.PathLike
) -> None:
    """Three columns, round-trip float formatting, one row per point."""
    lines = ["epsilon,lambda,residual"]
    lines += [f"{p.epsilon!r},{p.lam!r},{p.residual!r}" for p in points]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def write_csv(table: BranchTable, path: str | os.PathLike) -> None:
    write_points_csv(table.points, path)


def sidecar_metadata(table: BranchTable) -> dict:
    return {
        "N": table.cfg.N,
        "M": table.cfg.M,
        "l": table.cfg.l,
        "anchor_lambda": table.anchor.value,
        "slope_at_zero": table.anchor.slope,
        "truncated": table.truncated,
    }
