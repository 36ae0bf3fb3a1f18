"""Command-line interface.

Subcommands:

* ``surface`` build a family instance, export OBJ/CSV/JSON, print a summary;
* ``curve``   sample a named curve to CSV/JSON;
* ``verify``  run the verification suite (default battery or a TOML config)
              and write the JSON report; exit 1 when any check fails;
* ``ode``     integrate one of the generator ODEs and write the node table.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import export
from .errors import ConfigError, MinksurfError
from .families import FAMILY_IDS, build_family, default_grid
from .named_curves import NAMED_CURVES, make_named_curve
from .ode import AffineArgRhs, solve_scalar_ode
from .surface import GridSpec
from .verification import run_suite

_FAMILY_FLAGS = ("c", "theta", "k", "m", "a", "b1", "b", "w2", "w3", "r", "h",
                 "f0", "x0", "kappa", "c_alpha", "c_beta")


def _add_surface_parser(sub) -> None:
    p = sub.add_parser("surface", help="build a surface family and export it")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_IDS))
    for flag in _FAMILY_FLAGS:
        p.add_argument(f"--{flag.replace('_', '-')}", type=float, default=None, dest=flag)
    p.add_argument("--helix-type", choices=["I", "II", "III"], default=None)
    p.add_argument("--ns", type=int, default=50)
    p.add_argument("--nt", type=int, default=50)
    p.add_argument("--s-range", nargs=2, type=float, metavar=("S0", "S1"), default=None)
    p.add_argument("--t-range", nargs=2, type=float, metavar=("T0", "T1"), default=None)
    p.add_argument("--format", choices=["obj", "csv", "json"], default="obj")
    p.add_argument("--config", default=None, help="TOML file with [[surfaces]] tables")
    p.add_argument("--index", type=int, default=0, help="which [[surfaces]] table to build")
    p.add_argument("-o", "--output", required=True)


def _add_curve_parser(sub) -> None:
    p = sub.add_parser("curve", help="sample a named curve")
    p.add_argument("--curve", required=True, choices=sorted(NAMED_CURVES))
    for flag in ("c", "r", "h", "k"):
        p.add_argument(f"--{flag}", type=float, default=None, dest=flag)
    p.add_argument("--s-range", nargs=2, type=float, metavar=("S0", "S1"),
                   default=[-1.0, 1.0])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output", required=True)


def _add_verify_parser(sub) -> None:
    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--config", default=None, help="TOML suite config (default battery if omitted)")
    p.add_argument("-o", "--output", default=None, help="JSON report path (stdout if omitted)")


def _add_ode_parser(sub) -> None:
    p = sub.add_parser("ode", help="integrate a generator ODE, write the node table")
    p.add_argument("--rhs", required=True, choices=["t31", "t32a", "t32b"])
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--f0", type=float, default=0.3)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--x-range", nargs=2, type=float, metavar=("LO", "HI"),
                   default=[-1.0, 1.0])
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output", required=True)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minksurf",
        description="Maximal translation surfaces in Lorentz-Minkowski 3-space")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_surface_parser(sub)
    _add_curve_parser(sub)
    _add_verify_parser(sub)
    _add_ode_parser(sub)
    return parser


def _load_toml(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: invalid TOML: {exc}") from None


def _surface_params_from_args(args) -> dict:
    params = {flag: getattr(args, flag) for flag in _FAMILY_FLAGS
              if getattr(args, flag) is not None}
    if args.helix_type is not None:
        params["type"] = args.helix_type
    return params


def _run_surface(args) -> int:
    if args.config is not None:
        cfg = _load_toml(args.config)
        tables = cfg.get("surfaces")
        if not isinstance(tables, list) or not tables:
            raise ConfigError(f"{args.config}: expected at least one [[surfaces]] table")
        if not 0 <= args.index < len(tables):
            raise ConfigError(f"--index {args.index} out of range for {len(tables)} tables")
        entry = dict(tables[args.index])
        family = entry.pop("family", None)
        if family is None:
            raise ConfigError(f"{args.config}: surfaces[{args.index}] missing 'family'")
        entry = {k: v for k, v in entry.items()
                 if k not in ("checks", "ns", "nt", "s0", "s1", "t0", "t1", "tol",
                              "margin", "box")}
        surface = build_family(family, **entry)
    else:
        surface = build_family(args.family, **_surface_params_from_args(args))

    if args.s_range and args.t_range:
        grid = GridSpec(args.s_range[0], args.s_range[1], args.t_range[0],
                        args.t_range[1], args.ns, args.nt)
    else:
        grid = default_grid(surface, ns=args.ns, nt=args.nt)
        if args.s_range:
            grid = GridSpec(args.s_range[0], args.s_range[1], grid.t0, grid.t1,
                            args.ns, args.nt)
        if args.t_range:
            grid = GridSpec(grid.s0, grid.s1, args.t_range[0], args.t_range[1],
                            args.ns, args.nt)

    with open(args.output, "w", newline="") as fh:
        if args.format == "obj":
            stats = export.write_surface_obj(surface, grid, fh)
        elif args.format == "csv":
            stats = export.write_surface_csv(surface, grid, fh)
        else:
            rows = surface.samples(grid)
            payload = {
                "family": surface.family, "params": surface.params,
                "grid": grid.to_dict(),
                "samples": [
                    {"s": smp.s, "t": smp.t, "point": list(smp.point.as_tuple()),
                     "E": smp.E, "F": smp.F, "G": smp.G,
                     "H_residual": smp.H_residual, "causal": smp.causal.value,
                     "regular": smp.regular}
                    for row in rows for smp in row],
            }
            json.dump(payload, fh, indent=2)
            fh.write("\n")
            stats = export._summarize(rows)
    for note in surface.notes:
        print(f"note: {note}")
    print(f"{surface.family}: wrote {args.output} "
          f"spacelike={stats['spacelike']} timelike={stats['timelike']} "
          f"lightlike={stats['lightlike']} degenerate={stats['degenerate']} "
          f"max_H_residual={stats['max_H_residual']:.3e}")
    return 0


def _run_curve(args) -> int:
    params = {k: getattr(args, k) for k in ("c", "r", "h", "k")
              if getattr(args, k) is not None}
    curve = make_named_curve(args.curve, **params)
    lo, hi = args.s_range
    dlo, dhi = curve.domain
    if not (dlo < lo < dhi and dlo < hi < dhi):
        raise ConfigError(
            f"--s-range ({lo}, {hi}) outside curve domain ({dlo:.6g}, {dhi:.6g})")
    samples = [lo + (hi - lo) * i / (args.n - 1) for i in range(args.n)]
    with open(args.output, "w", newline="") as fh:
        if args.format == "csv":
            export.write_curve_csv(curve, samples, fh)
        else:
            payload = {"curve": args.curve, "params": params,
                       "samples": [
                           {"s": s, "point": list(curve.eval(s, 0).as_tuple())}
                           for s in samples]}
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    print(f"{args.curve}: wrote {args.output} ({args.n} samples)")
    return 0


def _run_verify(args) -> int:
    config = _load_toml(args.config) if args.config else None
    result = run_suite(config)
    text = result.to_json()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [r for r in result.reports if not r.passed]
    print(f"verify: {len(result.reports)} reports, {len(failed)} failed")
    for rep in failed:
        print(f"FAIL {rep.check} [{rep.family}] max_residual={rep.max_residual:.3e} "
              f"tol={rep.tolerance:.3e}")
    return 0 if result.passed else 1


def _run_ode(args) -> int:
    if args.rhs == "t31":
        rhs = AffineArgRhs(outer="tan", sign=-1.0, cx=-args.k * math.sin(args.theta),
                           cf=args.k * math.cos(args.theta), c0=args.a)
    elif args.rhs == "t32a":
        rhs = AffineArgRhs(outer="tanh", sign=-1.0, cx=args.m, cf=-args.m, c0=args.a)
    else:
        rhs = AffineArgRhs(outer="tanh", sign=+1.0, cx=-args.k * math.sinh(args.theta),
                           cf=args.k * math.cosh(args.theta), c0=args.a)
    sol = solve_scalar_ode(rhs, args.x0, args.f0, tuple(args.x_range), step=args.step)
    with open(args.output, "w", newline="") as fh:
        if args.format == "csv":
            export.write_ode_csv(sol, fh)
        else:
            json.dump({"x": sol.xs.tolist(), "f": sol.fs.tolist(),
                       "f_prime": sol.dfs.tolist(),
                       "max_step_error": sol.max_step_error,
                       "stop_lo": sol.stop_lo, "stop_hi": sol.stop_hi}, fh, indent=2)
            fh.write("\n")
    print(f"{args.rhs}: integrated ({sol.domain[0]:.6g}, {sol.domain[1]:.6g}) "
          f"nodes={len(sol.xs)} max_step_error={sol.max_step_error:.3e} "
          f"stop=({sol.stop_lo}, {sol.stop_hi})")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    try:
        if args.command == "surface":
            return _run_surface(args)
        if args.command == "curve":
            return _run_curve(args)
        if args.command == "verify":
            return _run_verify(args)
        return _run_ode(args)
    except MinksurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
