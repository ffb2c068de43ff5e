"""Command-line interface.

Exit codes: 0 success, 1 numerical or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from . import checks
from .analysis import cdf_curve, fit_beta_scenario, moment, pdf_curve, MAX_MOMENT_ORDER
from .core import ConfigError, make_config
from .montecarlo import rwp_density_crosscheck, simulate
from .quadrature import NoConvergence
from .rng import MAX_SEED

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def format_number(x) -> str:
    """Shortest round-trip decimal; integral values lose the trailing ``.0``."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def write_csv(stream, header, rows):
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_number(v) for v in row) + "\n")
    stream.write(buf.getvalue())


def write_json(stream, obj):
    stream.write(json.dumps(obj, indent=2) + "\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed(text):
    value = int(text)
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _add_config_flags(p, required=True):
    p.add_argument("--dim", type=int, choices=(2, 3), required=required)
    p.add_argument("--scenario", choices=("s1", "s2", "s3", "s4"), required=required)
    p.add_argument("--r1", type=float, required=required)
    p.add_argument("--r2", type=float, required=required)


def _config(args):
    missing = [f for f in ("dim", "scenario", "r1", "r2") if getattr(args, f) is None]
    if missing:
        raise UsageError("missing config flags: " + ", ".join("--" + m for m in missing))
    return make_config(args.dim, args.scenario, args.r1, args.r2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="internodal",
        description="Distance distributions between nodes in concentric disks/balls.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pdf", help="density curve on [0, r1 + r2]")
    _add_config_flags(p)
    p.add_argument("--points", type=int, default=257)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--source", choices=("closed", "oracle"), default="closed")

    p = sub.add_parser("cdf", help="cumulative distribution curve")
    _add_config_flags(p)
    p.add_argument("--points", type=int, default=257)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("moments", help="raw moments E[r^k], k = 0..max-order")
    _add_config_flags(p)
    p.add_argument("--max-order", type=int, default=2)

    p = sub.add_parser("fit-beta", help="moment-matched beta for r / (r1 + r2)")
    _add_config_flags(p)

    p = sub.add_parser("simulate", help="Monte Carlo summary")
    _add_config_flags(p)
    p.add_argument("-n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--bins", type=_positive_int, default=100)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--hist-out")

    p = sub.add_parser("validate", help="run the check suite")
    _add_config_flags(p, required=False)
    p.add_argument("--all", action="store_true", help="all 16 reference configurations")
    p.add_argument("-n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--grid-points", type=_positive_int, default=1000)
    p.add_argument("--workers", type=_positive_int, default=1)

    p = sub.add_parser("rwp-check", help="waypoint-process vs polynomial RWP density")
    p.add_argument("--dim", type=int, choices=(2, 3), required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("-n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--bins", type=_positive_int, default=50)
    return parser


def cmd_pdf(args, out):
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    curve = pdf_curve(_config(args), args.points, source=args.source)
    if args.format == "csv":
        write_csv(out, ("r", "pdf"), zip(curve.grid, curve.values))
    else:
        write_json(out, {"config": curve.config.as_dict(), "source": curve.source,
                         "grid": curve.grid.tolist(), "values": curve.values.tolist()})
    return EXIT_OK


def cmd_cdf(args, out):
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    curve = cdf_curve(_config(args), args.points)
    if args.format == "csv":
        write_csv(out, ("r", "cdf"), zip(curve.grid, curve.values))
    else:
        write_json(out, {"config": curve.config.as_dict(), "grid": curve.grid.tolist(),
                         "values": curve.values.tolist()})
    return EXIT_OK


def cmd_moments(args, out):
    if not 0 <= args.max_order <= MAX_MOMENT_ORDER:
        raise UsageError(f"--max-order must lie in [0, {MAX_MOMENT_ORDER}]")
    cfg = _config(args)
    write_json(out, {str(k): moment(cfg, k) for k in range(args.max_order + 1)})
    return EXIT_OK


def cmd_fit_beta(args, out):
    fit = fit_beta_scenario(_config(args))
    write_json(out, {"alpha": fit.params.alpha, "beta": fit.params.beta, "mean": fit.mean,
                     "variance": fit.variance, "normalization": fit.normalization})
    return EXIT_OK


def cmd_simulate(args, out):
    summary = simulate(_config(args), args.n, args.seed, bins=args.bins, workers=args.workers)
    report = summary.as_dict()
    if args.hist_out:
        edges, counts = summary.bin_edges, summary.counts
        with open(args.hist_out, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh, ("lo", "hi", "count"), zip(edges[:-1], edges[1:], counts))
    write_json(out, report)
    return EXIT_OK


def cmd_validate(args, out):
    if args.all:
        configs = checks.default_configs()
    else:
        configs = [_config(args)]
    if args.n < 10_000:
        raise UsageError("validate needs -n >= 10000")
    report = checks.run_suite(configs, args.n, args.seed, args.grid_points, args.workers)
    write_json(out, report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_rwp_check(args, out):
    write_json(out, rwp_density_crosscheck(args.dim, args.radius, args.n, args.seed, args.bins))
    return EXIT_OK


COMMANDS = {
    "pdf": cmd_pdf,
    "cdf": cmd_cdf,
    "moments": cmd_moments,
    "fit-beta": cmd_fit_beta,
    "simulate": cmd_simulate,
    "validate": cmd_validate,
    "rwp-check": cmd_rwp_check,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ConfigError) as exc:
        err.write(f"internodal {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except NoConvergence as exc:
        err.write(f"internodal {args.command}: numerical failure: {exc}\n")
        return EXIT_FAIL


def main_entry():
    sys.exit(main())
