"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 numeric or I/O failure.
"""
from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import cascade, emit
from .config import RunConfig
from .equilibrium import (
    coexistence_fixed_point,
    price_ratio_at_equilibrium,
    trivial_fixed_point,
    verify_fixed_point,
)
from .exceptions import InvalidSeed, MarketModelError
from .market_map import MarketParams, MarketState, iterate, reduce_params
from .stability import stability_report
from .sweep import RegimeKind, analytic_regime, sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _model_flags() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("model parameters")
    g.add_argument("--alpha", type=float, default=1.0)
    g.add_argument("--c0", type=float, default=1.2)
    g.add_argument("--mu", type=float, default=1.0)
    g.add_argument("--beta-x", type=float, default=1.0)
    g.add_argument("--beta-y", type=float, default=1.0)
    g.add_argument("--a", type=float, default=1.0)
    return p


def _common_flags() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--config", help="RunConfig file of 'key = value' lines")
    p.add_argument("--out", help="output path (default: stdout)")
    return p


def _scan_flags(gamma_min: float, gamma_max: float) -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("scan settings (defaults from RunConfig)")
    g.add_argument("--gamma-min", type=float, default=gamma_min)
    g.add_argument("--gamma-max", type=float, default=gamma_max)
    g.add_argument("--burn-in", type=int)
    g.add_argument("--window", type=int)
    g.add_argument("--samples", type=int)
    g.add_argument("--seed-z", type=float)
    return p


def build_parser() -> argparse.ArgumentParser:
    model, common = _model_flags(), _common_flags()
    parser = _Parser(prog="market-cascade", description="Private/state seller market maps.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("iterate", parents=[model, common], help="orbit of the coupled map as CSV")
    p.add_argument("--x0", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--steps", type=int, default=200)

    sub.add_parser("fixpoint", parents=[model, common], help="equilibrium report")

    p = sub.add_parser("stability", parents=[model, common], help="stability report")
    p.add_argument("--format", choices=["csv", "plain"], default="csv")

    p = sub.add_parser("bifurcate", parents=[common, _scan_flags(0.6, 1.0)], help="gamma scan of the logistic form")
    p.add_argument("--steps", type=int, default=400, help="number of gamma values")
    p.add_argument("--svg")

    p = sub.add_parser("lyapunov", parents=[common], help="Lyapunov exponent of the logistic form")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--steps", type=int, help="number of averaged iterates")
    p.add_argument("--burn-in", type=int)
    p.add_argument("--seed-z", type=float)

    p = sub.add_parser("cascade", parents=[common, _scan_flags(0.7, 0.9)], help="doubling points and Feigenbaum ratio")
    p.add_argument("--k-max", type=int)
    p.add_argument("--bisect-tol", type=float)

    p = sub.add_parser("sweep", parents=[common], help="regime grid over (c, beta_x/beta_y)")
    p.add_argument("--c-min", type=float, default=0.5)
    p.add_argument("--c-max", type=float, default=3.5)
    p.add_argument("--ratio-min", type=float, default=0.5)
    p.add_argument("--ratio-max", type=float, default=2.0)
    p.add_argument("--nc", type=int, default=50)
    p.add_argument("--nr", type=int, default=50)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--burn-in", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--pgm")
    p.add_argument("--svg")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {}
    for flag, key in (
        ("burn_in", "burn_in"),
        ("window", "window"),
        ("samples", "samples"),
        ("seed_z", "seed_z"),
        ("k_max", "k_max"),
        ("bisect_tol", "bisect_tol"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    return cfg.replace(**overrides) if overrides else cfg


def _params(args) -> MarketParams:
    return MarketParams(args.alpha, args.c0, args.mu, args.beta_x, args.beta_y, args.a)


@contextlib.contextmanager
def _open_out(path):
    if path is None:
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    with fh:
        yield fh


def _cmd_iterate(args, cfg):
    params = _params(args)
    x0 = cfg.seed_x if args.x0 is None else args.x0
    y0 = cfg.seed_y if args.y0 is None else args.y0
    orbit = iterate(params, MarketState(x0, y0), args.steps, cfg.divergence_threshold)
    with _open_out(args.out) as fh:
        emit.write_orbit_csv(orbit, fh)
    if orbit.diverged:
        print(f"orbit diverged at step {orbit.diverged_at}", file=sys.stderr)


def _cmd_fixpoint(args, cfg):
    params = _params(args)
    reduced = reduce_params(params)
    rows = [
        ("c", emit.fmt(reduced.c)),
        ("delta_x", emit.fmt(reduced.delta_x)),
        ("delta_y", emit.fmt(reduced.delta_y)),
    ]
    fp = coexistence_fixed_point(reduced, params.a)
    rows += [
        ("coexistence_x_star", emit.fmt(fp.x_star)),
        ("coexistence_y_star", emit.fmt(fp.y_star)),
        ("coexistence_positive", str(fp.positive).lower()),
        ("coexistence_verified", str(verify_fixed_point(params, fp, 1e-9)).lower()),
    ]
    if reduced.c != 1.0:
        rows.append(("price_ratio_at_equilibrium", emit.fmt(price_ratio_at_equilibrium(reduced, params.a, fp.y_star))))
    triv = trivial_fixed_point(reduced, params.a)
    rows += [("trivial_x_star", emit.fmt(triv.x_star)), ("trivial_y_star", emit.fmt(triv.y_star))]
    with _open_out(args.out) as fh:
        emit.write_key_value_csv(rows, fh)


def _cmd_stability(args, cfg):
    params = _params(args)
    rows = stability_report(params).as_rows()
    rows.append(("analytic_regime", analytic_regime(params).name))
    with _open_out(args.out) as fh:
        if args.format == "csv":
            emit.write_key_value_csv(rows, fh)
        else:
            width = max(len(k) for k, _ in rows)
            for k, v in rows:
                fh.write(f"{k.ljust(width)}  {v}\n")


def _gamma_axis(args):
    if not args.gamma_min < args.gamma_max:
        raise UsageError("--gamma-min must be below --gamma-max")
    if args.steps < 1:
        raise UsageError("--steps must be positive")
    return np.linspace(args.gamma_min, args.gamma_max, args.steps)


def _cmd_bifurcate(args, cfg):
    scan = cascade.bifurcation_scan(_gamma_axis(args), cfg)
    with _open_out(args.out) as fh:
        emit.write_bifurcation_csv(scan, fh)
    if args.svg:
        points = [(g, z) for g, zs in scan for z in zs]
        with _open_out(args.svg) as fh:
            emit.write_svg(points, (args.gamma_min, args.gamma_max, 0.0, 1.0), fh, "gamma", "z")


def _cmd_lyapunov(args, cfg):
    n = cfg.lyapunov_steps if args.steps is None else args.steps
    lam = cascade.lyapunov_exponent(args.gamma, cfg.seed_z, cfg.burn_in, n)
    with _open_out(args.out) as fh:
        fh.write(emit.fmt(lam) + "\n")


def _cmd_cascade(args, cfg):
    result = cascade.doubling_points(args.gamma_min, args.gamma_max, cfg.k_max, cfg.bisect_tol, cfg)
    with _open_out(args.out) as fh:
        fh.write("k,gamma,feigenbaum_ratio\n")
        for k, g in enumerate(result.points, 1):
            ratio = result.feigenbaum_estimates[k - 3] if k >= 3 else None
            fh.write(f"{k},{emit.fmt(g)},{'' if ratio is None else emit.fmt(ratio)}\n")


def _cmd_sweep(args, cfg):
    grid = sweep(args.c_min, args.c_max, args.ratio_min, args.ratio_max, args.nc, args.nr, cfg, args.a)
    with _open_out(args.out) as fh:
        emit.write_sweep_csv(grid, fh)
    if args.pgm:
        with _open_out(args.pgm) as fh:
            emit.write_pgm(grid, fh)
    if args.svg:
        points = [
            (cell.beta_ratio, cell.c)
            for cell in grid.cells
            if cell.analytic.kind is RegimeKind.StableCoexistence
        ]
        if points:
            bounds = (args.ratio_min, args.ratio_max, args.c_min, args.c_max)
            with _open_out(args.svg) as fh:
                emit.write_svg(points, bounds, fh, "beta_x/beta_y", "c")
        else:
            print("no StableCoexistence cells; SVG not written", file=sys.stderr)


COMMANDS = {
    "iterate": _cmd_iterate,
    "fixpoint": _cmd_fixpoint,
    "stability": _cmd_stability,
    "bifurcate": _cmd_bifurcate,
    "lyapunov": _cmd_lyapunov,
    "cascade": _cmd_cascade,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
        cfg = _config(args)
        COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(str(exc).rstrip(), file=sys.stderr)
        return 1
    except InvalidSeed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MarketModelError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
