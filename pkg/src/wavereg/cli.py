"""Batch front end: calibration, single-attractor analysis, parameter sweeps.

Subcommands
-----------
weierstrass   calibration table against the closed-form regularity
sna           one attractor: estimate row plus optional mesh/scatter/series dumps
sweep         regularity versus sigma over a grid, epsilon = (sigma-1.5)^2 past 1.5
transfer      transfer-operator iterates of a constant on a uniform angle grid

All outputs are plot-ready CSV (meshes optionally binary).  A flat key=value
config file can pre-set any flag of the chosen subcommand; explicit flags win.
The output directory defaults to $WAVEREG_OUT_DIR, then the working directory.

Exit codes: 0 success, 2 usage error, 3 numeric degeneracy, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .analytic import WeierstrassParams, theoretical_regularity, weierstrass_mesh
from .filters import daubechies_filter
from .fwt import fwt_forward, init_coeffs
from .regularity import (
    DegenerateInputError,
    default_skip_coarse,
    default_skip_fine,
    estimate_regularity,
    level_sups,
)
from .serialize import save_mesh, write_csv
from .sna import (
    SkewProductParams,
    generate_orbit_mesh,
    lyapunov_vertical,
    transfer_curve,
)
from .sweep import sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4

ESTIMATE_HEADER = [
    "sigma", "epsilon", "A", "B", "tau", "s", "log2C", "pearson",
    "p", "levels_used", "admissible", "status",
]


def _parse_grid(spec: str) -> np.ndarray:
    """Grid spec: either 'start:stop:count' or a comma list of values."""
    if ":" in spec:
        start, stop, count = spec.split(":")
        return np.linspace(float(start), float(stop), int(count))
    return np.array([float(v) for v in spec.split(",")], dtype=np.float64)


def _out_path(args, name: str | None = None) -> Path:
    base = Path(os.environ.get("WAVEREG_OUT_DIR", "."))
    out = Path(args.out if name is None else name)
    path = out if out.is_absolute() else base / out
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _aux_path(args, suffix: str) -> Path:
    primary = _out_path(args)
    return primary.with_name(primary.stem + suffix)


def _series_rows(series):
    return [
        (int(a), ls, bool(e))
        for a, ls, e in zip(series.abscissa, series.log2_sup, series.excluded)
    ]


def _dump_series(args, mesh, p, suffix):
    filt = daubechies_filter(p)
    sc = args.skip_coarse
    if sc is None:
        sc = default_skip_coarse(p)
    sf = args.skip_fine
    if sf is None:
        sf = default_skip_fine(mesh.J, sc)
    series = level_sups(fwt_forward(init_coeffs(mesh), filt), sc, sf)
    write_csv(
        _aux_path(args, suffix),
        ["level", "log2_sup", "excluded"],
        _series_rows(series),
    )


def cmd_weierstrass(args) -> int:
    grid = _parse_grid(args.A_grid)
    if grid.size == 0 or not np.all((1.0 / args.B <= grid) & (grid < 1.0)):
        print(
            f"error: A grid must lie in [1/B, 1) = [{1.0 / args.B:.6g}, 1)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    rows = []
    for A in grid:
        params = WeierstrassParams(A=float(A), B=args.B)
        mesh = weierstrass_mesh(params, args.J, sampling=args.sampling)
        est = estimate_regularity(
            mesh, p_start=args.p,
            skip_coarse=args.skip_coarse, skip_fine=args.skip_fine,
        )
        s_true = theoretical_regularity(params)
        rows.append((float(A), s_true, est.s, abs(est.s - s_true), est.pearson))
        if args.dump_series:
            _dump_series(args, mesh, est.vanishing_moments_used,
                         f"_series_A{A:.5f}.csv")
    write_csv(
        _out_path(args),
        ["A", "s_theoretical", "s_estimated", "abs_error", "pearson"],
        rows,
    )
    return EXIT_OK


def cmd_sna(args) -> int:
    params = SkewProductParams(
        sigma=args.sigma, epsilon=args.epsilon, rng_seed=args.seed
    )
    kappa = lyapunov_vertical(params)
    if kappa <= 0.0:
        print(
            f"warning: vertical Lyapunov exponent {kappa:.4f} <= 0; "
            "the attractor is x=0 and the estimate will degenerate",
            file=sys.stderr,
        )
    orbit = generate_orbit_mesh(
        params, args.N0, args.J,
        keep_angles=args.dump_scatter, check_lyapunov=False,
    )
    if args.dump_mesh:
        ext = "csv" if args.format == "csv" else "bin"
        save_mesh(_aux_path(args, f"_mesh.{ext}"), orbit.mesh, fmt=args.format)
    if args.dump_scatter:
        write_csv(
            _aux_path(args, "_scatter.csv"),
            ["theta", "x"],
            zip(orbit.angles, orbit.mesh.values),
        )
    status = "ok"
    code = EXIT_OK
    try:
        est = estimate_regularity(
            orbit.mesh, p_start=args.p,
            skip_coarse=args.skip_coarse, skip_fine=args.skip_fine,
        )
        if est.warnings:
            status = "warn: " + "; ".join(est.warnings)
        row = (
            params.sigma, params.epsilon, None, None, est.tau, est.s,
            est.log2C, est.pearson, est.vanishing_moments_used,
            est.levels_used, est.admissible, status,
        )
        if args.dump_series:
            _dump_series(args, orbit.mesh, est.vanishing_moments_used,
                         "_series.csv")
    except DegenerateInputError as exc:
        status = f"degenerate: {exc}"
        row = (
            params.sigma, params.epsilon, None, None, float("nan"),
            float("nan"), float("nan"), float("nan"), args.p, 0, False, status,
        )
        code = EXIT_DEGENERATE
    write_csv(_out_path(args), ESTIMATE_HEADER, [row])
    if status != "ok":
        print(f"status: {status}", file=sys.stderr)
    return code


def cmd_sweep(args) -> int:
    if args.grid_values:
        grid = _parse_grid(args.grid_values)
    else:
        grid = np.linspace(args.sigma_min, args.sigma_max, args.grid)
    if grid.size == 0 or grid.min() < 1.0 or grid.max() > 2.0:
        print("error: sigma grid must lie within [1, 2]", file=sys.stderr)
        return EXIT_USAGE
    rows = sweep(
        grid, J=args.J, transient=args.N0, p=args.p, seed=args.seed,
        workers=args.workers, scan_orders=args.scan_orders,
    )
    write_csv(
        _out_path(args),
        ["sigma", "epsilon", "tau", "s", "log2C", "pearson", "p",
         "admissible", "wall_time_seconds", "status"],
        [
            (r.sigma, r.epsilon, r.tau, r.s, r.log2C, r.pearson, r.p,
             r.admissible, r.wall_time_seconds, r.status)
            for r in rows
        ],
    )
    return EXIT_OK


def cmd_transfer(args) -> int:
    params = SkewProductParams(sigma=args.sigma, epsilon=args.epsilon)
    c = args.c if args.c is not None else 2.0 * args.sigma + 2.0
    theta = None
    columns = []
    for k in range(args.k_max + 1):
        theta, values = transfer_curve(params, k, args.grid_n, c)
        columns.append(values)
    write_csv(
        _out_path(args),
        ["theta"] + [f"phi_{k}" for k in range(args.k_max + 1)],
        zip(theta, *columns),
    )
    return EXIT_OK


def _add_common(sub, J_default: int, p_default: int):
    sub.add_argument("--J", type=int, default=J_default,
                     help=f"scale depth, 4..30 (default {J_default})")
    sub.add_argument("--p", type=int, default=p_default,
                     help=f"vanishing moments (default {p_default})")
    sub.add_argument("--skip-coarse", type=int, default=None,
                     help="coarse levels excluded from the fit "
                          "(default: wavelet-support rule)")
    sub.add_argument("--skip-fine", type=int, default=None,
                     help="fine levels excluded from the fit "
                          "(default: seed-bias guard band)")
    sub.add_argument("--out", default=None, help="primary output CSV path")
    sub.add_argument("--format", choices=("csv", "binary"), default="csv",
                     help="format for mesh dumps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavereg",
        description="Wavelet-based Besov regularity estimation for sampled "
                    "circle maps and forced skew-product attractors.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    w = subs.add_parser("weierstrass", help="calibration against the "
                        "closed-form Weierstrass regularity")
    _add_common(w, J_default=22, p_default=10)
    w.add_argument("--A-grid", default="0.56745:0.86475:16",
                   help="amplitude grid, start:stop:count or comma list")
    w.add_argument("--B", type=float, default=2.0, help="frequency ratio")
    w.add_argument("--sampling", choices=("circle", "verbatim"),
                   default="circle",
                   help="mesh sampling variant (circle avoids the wrap jump)")
    w.add_argument("--dump-series", action="store_true",
                   help="write the per-A level series for regression plots")
    w.set_defaults(func=cmd_weierstrass, out_default="weierstrass.csv")

    s = subs.add_parser("sna", help="single-attractor regularity estimate")
    _add_common(s, J_default=20, p_default=16)
    s.add_argument("--sigma", type=float, required=True)
    s.add_argument("--epsilon", type=float, default=0.0)
    s.add_argument("--N0", type=int, default=10**5, help="transient length")
    s.add_argument("--seed", type=int, default=0, help="seed for theta0")
    s.add_argument("--dump-mesh", action="store_true")
    s.add_argument("--dump-scatter", action="store_true",
                   help="write (theta, x) pairs before angles are discarded")
    s.add_argument("--dump-series", action="store_true")
    s.set_defaults(func=cmd_sna, out_default="sna.csv")

    v = subs.add_parser("sweep", help="regularity versus sigma on [1, 2]")
    _add_common(v, J_default=20, p_default=16)
    v.add_argument("--grid", type=int, default=256,
                   help="number of sigma grid points (default 256)")
    v.add_argument("--grid-values", default=None,
                   help="explicit sigma grid, start:stop:count or comma list")
    v.add_argument("--sigma-min", type=float, default=1.0)
    v.add_argument("--sigma-max", type=float, default=2.0)
    v.add_argument("--N0", type=int, default=10**5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1,
                   help="parallel worker processes")
    v.add_argument("--scan-orders", action="store_true",
                   help="per grid point, report the filter order (4..20, "
                        "even) with the highest Pearson correlation")
    v.set_defaults(func=cmd_sweep, out_default="sweep.csv")

    t = subs.add_parser("transfer", help="transfer-operator iterates of a "
                        "constant on a uniform angle grid")
    t.add_argument("--sigma", type=float, required=True)
    t.add_argument("--epsilon", type=float, default=0.0)
    t.add_argument("--c", type=float, default=None,
                   help="start constant (default 2*sigma + 2)")
    t.add_argument("--k-max", type=int, default=3,
                   help="highest iterate to tabulate (default 3)")
    t.add_argument("--grid-n", type=int, default=4096,
                   help="angle grid size (default 4096)")
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_transfer, out_default="transfer.csv")

    return parser


def _load_config_tokens(path: str, argv_rest: list) -> list:
    """Turn key=value lines into CLI tokens, inserted before explicit flags."""
    tokens = []
    text = Path(path).read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "false"):
            if value.lower() == "true":
                tokens.append(flag)
        else:
            tokens.extend((flag, value))
    return tokens + argv_rest


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--config" in argv:
        i = argv.index("--config")
        if i + 1 >= len(argv):
            print("error: --config requires a path", file=sys.stderr)
            return EXIT_USAGE
        config_path = argv[i + 1]
        del argv[i : i + 2]
        if not argv or argv[0].startswith("-"):
            print("error: --config requires a subcommand", file=sys.stderr)
            return EXIT_USAGE
        try:
            argv = [argv[0]] + _load_config_tokens(config_path, argv[1:])
        except OSError as exc:
            print(f"error reading config: {exc}", file=sys.stderr)
            return EXIT_IO
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "out", None) is None:
        args.out = args.out_default
    J = getattr(args, "J", None)
    if J is not None and not (4 <= J <= 30):
        print(f"error: J must lie in [4, 30], got {J}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, DegenerateInputError) as exc:
        if isinstance(exc, DegenerateInputError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DEGENERATE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
