"""Command-line surface for the eigenvalue tooling.

Subcommands compute the Steklov spectrum, trace Neumann branches, report
slope difference quotients, export multi-family figure data, and run the
verification suites (cross-product identities, remainder scaling, the
Bessel-vs-shooting oracle comparison, eigenfunction matching).

Exit codes: 0 on success, 2 for flag or domain errors, 3 for numerical
failures (lost brackets, gate violations). Failures emit one JSON object
{"code", "message", "context"} on stderr. All CSV output uses repr float
formatting, so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import branch as _branch
from . import crossprod as _cp
from . import shooting as _sh
from .errors import BracketError, IterationLimitError
from .model import ProblemConfig
from .spectrum import steklov_eigenvalue

__all__ = ["RunSpec", "run", "main"]


class UsageError(ValueError):
    """Bad flags or domain values; maps to exit code 2."""


class VerificationFailure(RuntimeError):
    """A verification gate was exceeded; maps to exit code 3."""


_PI_PATTERN = re.compile(
    r"^([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?$", re.IGNORECASE
)


def parse_mass(text: str) -> float:
    """Mass values accept pi literals: 'pi', '4pi', '2*pi', '4*pi/3'."""
    s = text.strip()
    m = _PI_PATTERN.match(s)
    if m:
        coeff = float(m.group(1)) if m.group(1) else 1.0
        div = float(m.group(2)) if m.group(2) else 1.0
        return coeff * math.pi / div
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"cannot parse mass {text!r}") from None


def _parse_float_range(text: str) -> tuple[float, float]:
    parts = text.split("..")
    if len(parts) != 2:
        raise UsageError(f"expected 'lo..hi', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"expected 'lo..hi', got {text!r}") from None
    if not lo < hi:
        raise UsageError(f"range must increase, got {text!r}")
    return lo, hi


def _parse_int_range(text: str) -> tuple[int, int]:
    parts = text.split("..")
    if len(parts) == 1:
        try:
            v = int(parts[0])
        except ValueError:
            raise UsageError(f"expected 'lo..hi' or int, got {text!r}") from None
        return v, v
    if len(parts) != 2:
        raise UsageError(f"expected 'lo..hi', got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"expected 'lo..hi', got {text!r}") from None
    if lo > hi:
        raise UsageError(f"range must not decrease, got {text!r}")
    return lo, hi


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated floats, got {text!r}") from None


@dataclass
class RunSpec:
    command: str
    N: int = 0
    M: float = 0.0
    l: int | None = None
    l_range: tuple[int, int] | None = None
    eps: float | None = None
    eps_list: list[float] = field(default_factory=list)
    eps_range: tuple[float, float] | None = None
    eps_max: float | None = None
    steps: int = 200
    lam_max: float | None = None
    out: str | None = None
    fmt: str = "csv"
    samples: int = 512
    grid_size: int = 2000
    points: int = 8
    workers: int = 4
    root_tol: float | None = None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)


def _csv(header: str, rows: list[tuple]) -> str:
    lines = [header]
    lines += [",".join(repr(v) if isinstance(v, float) else str(v) for v in row)
              for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_spectrum(spec: RunSpec) -> int:
    if spec.l is not None:
        ls = [spec.l]
    elif spec.l_range is not None:
        ls = list(range(spec.l_range[0], spec.l_range[1] + 1))
    else:
        raise UsageError("spectrum needs --l or --l-max")
    rows = []
    for l in ls:
        ev = steklov_eigenvalue(ProblemConfig(N=spec.N, M=spec.M, l=l))
        rows.append((ev.l, ev.value, ev.multiplicity, ev.slope))
    if spec.fmt == "json":
        payload = [
            {"l": r[0], "lambda": r[1], "multiplicity": r[2], "slope": r[3]}
            for r in rows
        ]
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", spec.out)
    else:
        _emit(_csv("l,lambda,multiplicity,slope", rows), spec.out)
    return 0


def _cmd_branch(spec: RunSpec) -> int:
    if spec.l is None or spec.eps_max is None:
        raise UsageError("branch needs --l and --eps-max")
    cfg = ProblemConfig(N=spec.N, M=spec.M, l=spec.l)
    table = _branch.continue_branch(
        cfg,
        spec.eps_max,
        spec.steps,
        root_tol=spec.root_tol,
        lam_max=spec.lam_max,
    )
    if spec.out is None:
        rows = [(p.epsilon, p.lam, p.residual) for p in table.points]
        _emit(_csv("epsilon,lambda,residual", rows), None)
    else:
        _branch.write_csv(table, spec.out)
        sidecar = os.path.splitext(spec.out)[0] + ".json"
        with open(sidecar, "w", encoding="ascii") as fh:
            json.dump(_branch.sidecar_metadata(table), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if table.truncated:
        raise VerificationFailure(
            f"branch truncated after {len(table.points)} of {spec.steps} points"
        )
    return 0


def _cmd_slope(spec: RunSpec) -> int:
    if spec.l is None:
        raise UsageError("slope needs --l")
    cfg = ProblemConfig(N=spec.N, M=spec.M, l=spec.l)
    eps_list = spec.eps_list or [1e-2, 1e-3, 1e-4]
    anchor = _branch.anchor_eigenvalue(cfg)
    quotients = _branch.slope_estimate(cfg, eps_list, root_tol=spec.root_tol)
    rows = [(e, q, anchor.slope) for e, q in quotients]
    if spec.fmt == "json":
        payload = {
            "formula": anchor.slope,
            "quotients": [{"epsilon": e, "quotient": q} for e, q, _ in rows],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", spec.out)
    else:
        _emit(_csv("epsilon,quotient,formula", rows), spec.out)
    return 0


def _trace_figure_l(
    cfg: ProblemConfig,
    grid: list[float],
    lam_max: float,
    root_tol: float | None,
) -> list[dict]:
    """All families of one angular index inside the lambda window."""
    families: list[dict] = []
    anchored_end: float | None = None
    if cfg.l >= 1 or cfg.N == 1:
        anchor = _branch.anchor_eigenvalue(cfg)
        points, truncated = _branch.trace_family(
            cfg,
            start=(0.0, anchor.value),
            eps_values=grid,
            slope0=anchor.slope,
            lam_scale=anchor.value,
            lam_max=lam_max,
            root_tol=root_tol,
        )
        if points:
            families.append(
                {
                    "kind": "anchored",
                    "l": cfg.l,
                    "anchor_lambda": anchor.value,
                    "slope_at_zero": anchor.slope,
                    "truncated": truncated,
                    "points": points,
                }
            )
            if not truncated:
                anchored_end = points[-1].lam
    # families with no eps -> 0 limit: seed at the top of the eps grid
    # and continue downward until they leave the window
    eps_hi = grid[-1]
    seeds = _branch.scan_roots(
        cfg, eps_hi, lam_max, samples=800, root_tol=root_tol
    )
    down = list(reversed(grid[:-1]))
    idx = 0
    for seed in seeds:
        if anchored_end is not None and abs(seed.lam - anchored_end) <= 1e-6 * (
            1.0 + abs(anchored_end)
        ):
            continue
        idx += 1
        traced, _ = _branch.trace_family(
            cfg,
            start=(seed.epsilon, seed.lam),
            eps_values=down,
            lam_scale=seed.lam,
            lam_max=lam_max,
            root_tol=root_tol,
        )
        pts = sorted([seed] + traced, key=lambda p: p.epsilon)
        families.append(
            {
                "kind": f"scan{idx}",
                "l": cfg.l,
                "anchor_lambda": None,
                "slope_at_zero": None,
                "truncated": True,
                "points": pts,
            }
        )
    return families


def _cmd_figure(spec: RunSpec) -> int:
    if spec.l_range is None or spec.eps_range is None:
        raise UsageError("figure needs --l lo..hi and --eps lo..hi")
    if spec.out is None:
        raise UsageError("figure needs --out DIR")
    lam_max = spec.lam_max if spec.lam_max is not None else 50.0
    lo, hi = spec.eps_range
    if not (0.0 < lo < hi < 1.0):
        raise UsageError(f"eps range must sit strictly inside (0, 1), got {lo}..{hi}")
    n = spec.steps
    grid = [lo + (hi - lo) * i / (n - 1) for i in range(n)] if n > 1 else [lo]
    configs = [
        ProblemConfig(N=spec.N, M=spec.M, l=l)
        for l in range(spec.l_range[0], spec.l_range[1] + 1)
    ]
    with ThreadPoolExecutor(max_workers=max(1, spec.workers)) as pool:
        results = list(
            pool.map(
                lambda cfg: _trace_figure_l(cfg, grid, lam_max, spec.root_tol),
                configs,
            )
        )
    os.makedirs(spec.out, exist_ok=True)
    manifest: dict = {
        "N": spec.N,
        "M": spec.M,
        "eps_min": lo,
        "eps_max": hi,
        "steps": n,
        "lambda_max": lam_max,
        "families": [],
    }
    for fams in results:  # already ordered by l; scan index orders within
        for fam in fams:
            name = f"family_l{fam['l']}_{fam['kind']}.csv"
            _branch.write_points_csv(fam["points"], os.path.join(spec.out, name))
            manifest["families"].append(
                {
                    "file": name,
                    "l": fam["l"],
                    "kind": fam["kind"],
                    "anchor_lambda": fam["anchor_lambda"],
                    "slope_at_zero": fam["slope_at_zero"],
                    "truncated": fam["truncated"],
                    "points": len(fam["points"]),
                }
            )
    with open(os.path.join(spec.out, "manifest.json"), "w", encoding="ascii") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


def _point_at(spec: RunSpec, cfg: ProblemConfig, eps: float) -> _branch.BranchPoint:
    steps = max(4, int(math.ceil(eps / 0.05)))
    table = _branch.continue_branch(cfg, eps, steps, root_tol=spec.root_tol)
    if table.truncated or not table.points:
        raise BracketError(f"branch lost before eps={eps}")
    return table.points[-1]


def _cmd_oracle_compare(spec: RunSpec) -> int:
    if spec.l is None:
        raise UsageError("oracle-compare needs --l")
    cfg = ProblemConfig(N=spec.N, M=spec.M, l=spec.l)
    eps_list = spec.eps_list or [0.01, 0.05, 0.1, 0.3]
    tol = 1e-8
    rows = []
    worst = 0.0
    for eps in eps_list:
        pt = _point_at(spec, cfg, eps)
        width = max(0.05 * pt.lam, 0.02)
        res = _sh.eigenvalue_by_shooting(
            cfg,
            eps,
            (pt.lam - width, pt.lam + width),
            grid_size=spec.grid_size,
            tol=1e-12,
        )
        rel = abs(res.lam - pt.lam) / abs(pt.lam)
        worst = max(worst, rel)
        rows.append(
            {
                "epsilon": eps,
                "lambda_characteristic": pt.lam,
                "lambda_shooting": res.lam,
                "rel_diff": rel,
            }
        )
    payload = {"rows": rows, "max_rel_diff": worst, "tolerance": tol,
               "pass": worst <= tol}
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", spec.out)
    if worst > tol:
        raise VerificationFailure(
            f"oracle disagreement {worst:.3e} exceeds {tol:.1e}"
        )
    return 0


def _cmd_verify_crossprod(spec: RunSpec) -> int:
    nus = [k / 2.0 for k in range(0, 11)]
    zs = [0.5, 1.0, 2.0, 5.0, 10.0]
    worst_closed = 0.0
    worst_recursive = 0.0
    exact = True
    for family in (_cp.Family.PLAIN, _cp.Family.PRIMED):
        for nu in nus:
            for k in range(1, 7):
                kind = _cp.CrossKind(family=family, k=k)
                rec = _cp.recursive_form(kind, nu)
                if k <= 4:
                    clo = _cp.closed_form(kind, nu)
                    if (
                        clo.constant_term != rec.constant_term
                        or clo.inverse_power_coeffs != rec.inverse_power_coeffs
                    ):
                        exact = False
                for z in zs:
                    direct = _cp.direct_cross_product(kind, nu, z)
                    scale = max(abs(direct), 2.0 / (math.pi * z))
                    err_rec = abs(_cp.evaluate(rec, z) - direct) / scale
                    worst_recursive = max(worst_recursive, err_rec)
                    if k <= 4:
                        err_clo = abs(_cp.evaluate(clo, z) - direct) / scale
                        worst_closed = max(worst_closed, err_clo)
    payload = {
        "closed_vs_direct_max_rel": worst_closed,
        "recursive_vs_direct_max_rel": worst_recursive,
        "recursive_matches_closed_exactly": exact,
        "gates": {"closed": 1e-10, "recursive": 1e-9},
        "pass": exact and worst_closed <= 1e-10 and worst_recursive <= 1e-9,
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", spec.out)
    if not payload["pass"]:
        raise VerificationFailure("cross-product identity gates exceeded")
    return 0


def _cmd_verify_remainder(spec: RunSpec) -> int:
    if spec.l is None:
        raise UsageError("verify-remainder needs --l")
    cfg = ProblemConfig(N=spec.N, M=spec.M, l=spec.l)
    anchor = _branch.anchor_eigenvalue(cfg)
    n = spec.points
    grid = [10.0 ** (-5.0 + 3.0 * i / (n - 1)) for i in range(n)]
    data = _branch.remainder_scaling(cfg, anchor.value, grid)
    xs = [math.log(e) for e, _ in data]
    ys = [math.log(r) for _, r in data]
    m = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx)
    payload = {
        "lambda": anchor.value,
        "points": [{"epsilon": e, "remainder": r} for e, r in data],
        "fitted_slope": slope,
        "gate": 1.4,
        "pass": slope >= 1.4,
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", spec.out)
    if slope < 1.4:
        raise VerificationFailure(
            f"remainder log-log slope {slope:.3f} below 1.4"
        )
    return 0


def _cmd_eigenfunction(spec: RunSpec) -> int:
    if spec.l is None or spec.eps is None:
        raise UsageError("eigenfunction needs --l and --eps")
    cfg = ProblemConfig(N=spec.N, M=spec.M, l=spec.l)
    pt = _point_at(spec, cfg, spec.eps)
    prof = _branch.radial_profile(cfg, pt, root_tol=spec.root_tol)
    n = spec.samples
    rows = []
    for i in range(1, n + 1):
        r = i / n
        rows.append((r, prof.value(r), prof.derivative(r)))
    _emit(_csv("r,S,dS", rows), spec.out)
    return 0


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "branch": _cmd_branch,
    "slope": _cmd_slope,
    "figure": _cmd_figure,
    "verify-crossprod": _cmd_verify_crossprod,
    "verify-remainder": _cmd_verify_remainder,
    "oracle-compare": _cmd_oracle_compare,
    "eigenfunction": _cmd_eigenfunction,
}


def run(spec: RunSpec) -> int:
    """Dispatch a RunSpec; returns the exit code, raising on failure."""
    if spec.command not in _COMMANDS:
        raise UsageError(f"unknown command {spec.command!r}")
    return _COMMANDS[spec.command](spec)


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: A003 - argparse API
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="steklov", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser, *, cfg: bool = True) -> None:
        if cfg:
            p.add_argument("--N", type=int, required=True)
            p.add_argument("--M", type=parse_mass, required=True)
        p.add_argument("--out", default=None)
        p.add_argument("--format", dest="fmt", choices=("csv", "json"),
                       default="csv")
        p.add_argument("--root-tol", dest="root_tol", type=float, default=None)

    p = sub.add_parser("spectrum", help="Steklov eigenvalues and multiplicities")
    common(p)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--l-max", dest="l_max", type=int, default=None)

    p = sub.add_parser("branch", help="trace one eigenvalue branch in eps")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--eps-max", dest="eps_max", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--lambda-max", dest="lam_max", type=float, default=None)

    p = sub.add_parser("slope", help="difference quotients vs the slope formula")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--eps", type=_parse_float_list, default=None)

    p = sub.add_parser("figure", help="multi-family branch data for plotting")
    common(p)
    p.add_argument("--l", type=_parse_int_range, required=True)
    p.add_argument("--eps", type=_parse_float_range, required=True)
    p.add_argument("--steps", type=int, default=199)
    p.add_argument("--lambda-max", dest="lam_max", type=float, default=50.0)
    p.add_argument("--workers", type=int, default=4)

    p = sub.add_parser("verify-crossprod", help="cross-product identity gates")
    common(p, cfg=False)

    p = sub.add_parser("verify-remainder", help="remainder scaling exponent gate")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--points", type=int, default=8)

    p = sub.add_parser("oracle-compare", help="characteristic roots vs shooting")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--eps", type=_parse_float_list, default=None)
    p.add_argument("--grid-size", dest="grid_size", type=int, default=2000)

    p = sub.add_parser("eigenfunction", help="radial profile at a branch point")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--samples", type=int, default=512)

    return parser


def _spec_from_args(args: argparse.Namespace) -> RunSpec:
    spec = RunSpec(command=args.command)
    spec.N = getattr(args, "N", 0)
    spec.M = getattr(args, "M", 0.0)
    spec.out = getattr(args, "out", None)
    spec.fmt = getattr(args, "fmt", "csv")
    env_tol = os.environ.get("STEKLOV_ROOT_TOL")
    spec.root_tol = getattr(args, "root_tol", None)
    if spec.root_tol is None and env_tol is not None:
        try:
            spec.root_tol = float(env_tol)
        except ValueError:
            raise UsageError(
                f"STEKLOV_ROOT_TOL is not a float: {env_tol!r}"
            ) from None

    if args.command == "spectrum":
        spec.l = args.l
        if args.l_max is not None:
            if args.l_max < 0:
                raise UsageError("--l-max must be >= 0")
            spec.l_range = (0, args.l_max)
    elif args.command == "branch":
        spec.l = args.l
        spec.eps_max = args.eps_max
        spec.steps = args.steps
        spec.lam_max = args.lam_max
    elif args.command == "slope":
        spec.l = args.l
        spec.eps_list = args.eps or []
    elif args.command == "figure":
        spec.l_range = args.l
        spec.eps_range = args.eps
        spec.steps = args.steps
        spec.lam_max = args.lam_max
        spec.workers = args.workers
    elif args.command == "verify-remainder":
        spec.l = args.l
        spec.points = args.points
    elif args.command == "oracle-compare":
        spec.l = args.l
        spec.eps_list = args.eps or []
        spec.grid_size = args.grid_size
    elif args.command == "eigenfunction":
        spec.l = args.l
        spec.eps = args.eps
        spec.samples = args.samples
    return spec


def _fail(code: int, message: str, context: dict) -> int:
    sys.stderr.write(
        json.dumps({"code": code, "message": message, "context": context})
        + "\n"
    )
    return code


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    command = argv[0] if argv and not argv[0].startswith("-") else None
    try:
        args = _build_parser().parse_args(argv)
        spec = _spec_from_args(args)
        return run(spec)
    except UsageError as exc:
        return _fail(2, str(exc), {"command": command, "argv": argv})
    except (BracketError, IterationLimitError, VerificationFailure) as exc:
        return _fail(3, str(exc), {"command": command})
    except ValueError as exc:
        return _fail(2, str(exc), {"command": command})
    except (ArithmeticError, RuntimeError) as exc:
        return _fail(3, str(exc), {"command": command})


if __name__ == "__main__":
    sys.exit(main())
