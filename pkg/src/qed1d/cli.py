"""Command-line front end.

Subcommands compute single values (energy, vacuum-charge), position
profiles (vp-density, uehling) and parameter scans (scan), serializing to
CSV or JSON.  Profiles and scans evaluate their points concurrently
(QED1D_MAX_THREADS caps the pool) but always emit rows in input order, and
identical configurations rerun byte-identically.

Exit codes: 0 success, 2 usage error, 3 parameter-domain violation,
4 quadrature non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .energy import breakdown
from .green import (
    DEFAULT_NUMBER_CUTOFF,
    uehling_density_quad,
    vacuum_numbers,
    vp_density_green_quad,
)
from .model import ModelParams, derive
from .quadrature import QuadratureError, QuadratureSpec
from .vacuum import (
    vacuum_charge_summary,
    vp_density_commutator_quad,
    vp_density_quad,
)

DEFAULT_C = 137.036

_FLOAT_FMT = "%.17g"


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        return _FLOAT_FMT % value
    return str(value)


def _csv_text(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write_output(args, text: str) -> None:
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")


def _echo_config(args, extra: str = "") -> None:
    print(
        f"qed1d {args.command}: Z={_fmt(args.Z)} c={_fmt(args.c)} m={_fmt(args.m)} "
        f"rel_tol={_fmt(args.rel_tol)} abs_tol={_fmt(args.abs_tol)}{extra}",
        file=sys.stderr,
    )


# ---------------------------------------------------------------------------
# Concurrency
# ---------------------------------------------------------------------------

def _max_threads() -> int:
    env = os.environ.get("QED1D_MAX_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("QED1D_MAX_THREADS must be >= 1")
        return n
    return min(8, os.cpu_count() or 1)


def _map_ordered(fn, items):
    """Evaluate fn over items concurrently, preserving input order."""
    threads = _max_threads()
    if threads == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Shared argument plumbing
# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, default_format: str) -> None:
    sub.add_argument("--Z", type=float, required=True, help="nuclear charge (a.u.)")
    sub.add_argument("--c", type=float, default=DEFAULT_C,
                     help=f"speed of light (a.u., default {DEFAULT_C})")
    sub.add_argument("--m", type=float, default=1.0,
                     help="electron mass (a.u., default 1)")
    sub.add_argument("--rel-tol", type=float, default=1e-10, dest="rel_tol")
    sub.add_argument("--abs-tol", type=float, default=1e-12, dest="abs_tol")
    sub.add_argument("--max-subdivisions", type=int, default=2000,
                     dest="max_subdivisions")
    sub.add_argument("--format", choices=("csv", "json"), default=default_format)
    sub.add_argument("--output", "-o", default="-",
                     help="output path, '-' for stdout (default)")


def _add_grid(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--x-min", type=float, default=-0.05, dest="x_min")
    sub.add_argument("--x-max", type=float, default=0.05, dest="x_max")
    sub.add_argument("--points", type=int, default=501)
    sub.add_argument("--x-units", choices=("au", "compton"), default="au",
                     dest="x_units",
                     help="interpret and report x in a.u. or in units of 1/(m c)")
    sub.add_argument("--plot", action="store_true",
                     help="also render a figure next to the output file")


def _spec_from(args) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                          max_subdivisions=args.max_subdivisions)


def _params_from(args) -> ModelParams:
    return ModelParams(Z=args.Z, c=args.c, m=args.m)


def _grid(args, params: ModelParams) -> tuple[list[float], list[float], float]:
    """Returns (xs in a.u., xs in display units, display scale factor)."""
    if args.points < 2:
        raise SystemExit(_usage(f"--points must be >= 2, got {args.points}"))
    if not args.x_max > args.x_min:
        raise SystemExit(_usage("--x-max must exceed --x-min"))
    compton = 1.0 / (params.m * params.c)
    scale = compton if args.x_units == "compton" else 1.0
    step = (args.x_max - args.x_min) / (args.points - 1)
    display = [args.x_min + i * step for i in range(args.points)]
    return [x * scale for x in display], display, scale


def _usage(message: str) -> int:
    print(f"qed1d: error: {message}", file=sys.stderr)
    return 2


def _plot_target(args) -> Path:
    if args.output == "-":
        raise SystemExit(_usage("--plot requires --output to be a file path"))
    return Path(args.output).with_suffix(".png")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_energy(args) -> int:
    params = _params_from(args)
    spec = _spec_from(args)
    _echo_config(args)
    bd = breakdown(params, spec)
    scale = 1.0
    if args.scaled:
        scale = params.m * params.Z**4 / (8.0 * params.c * params.c)
        if scale == 0.0:
            raise ValueError("--scaled is undefined at Z = 0")
    fields = {
        "zeroth": bd.zeroth,
        "dc": bd.dc / scale,
        "xc": bd.xc / scale,
        "db": bd.db / scale,
        "xb": bd.xb / scale,
        "total_vp": bd.total_vp / scale,
        "el_first_order": bd.el_first_order,
    }
    if args.format == "json":
        obj = {"Z": params.Z, "c": params.c, "m": params.m, **fields}
        for name, err in bd.error_estimates.items():
            obj[f"{name}_error_estimate"] = err / scale
        if args.scaled:
            obj["unit"] = "m*Z^4/(8*c^2)"
            obj["unit_value"] = scale
        _write_output(args, _json_text(obj))
    else:
        header = list(fields)
        _write_output(args, _csv_text(header, [[fields[h] for h in header]]))
    return 0


_PROFILE_METHODS = ("spectral", "commutator", "green", "uehling")


def _profile_evaluator(method: str, params: ModelParams, spec: QuadratureSpec):
    d = derive(params)
    if method == "spectral":
        return lambda x: vp_density_quad(d, x, spec)
    if method == "commutator":
        return lambda x: vp_density_commutator_quad(d, x, spec)
    if method == "green":
        return lambda x: vp_density_green_quad(params, x, spec)
    if method == "uehling":
        return lambda x: uehling_density_quad(params, x, spec)
    raise ValueError(f"unknown method {method!r}")


def _profile_rows(args, value_name: str, method: str) -> tuple[list[dict], list[float], list[float]]:
    params = _params_from(args)
    spec = _spec_from(args)
    xs_au, xs_display, _ = _grid(args, params)
    evaluate = _profile_evaluator(method, params, spec)
    results = _map_ordered(evaluate, xs_au)
    rows = []
    values = []
    for x_disp, res in zip(xs_display, results):
        value = res.require(f"{value_name} at x={x_disp!r}")
        values.append(value)
        rows.append({
            "x": x_disp,
            value_name: value,
            f"{value_name}_error_estimate": res.error_estimate,
        })
    return rows, xs_display, values


def _emit_profile(args, rows: list[dict], value_name: str) -> None:
    if args.format == "json":
        _write_output(args, _json_text(rows))
    else:
        _write_output(args, _csv_text(
            ["x", value_name],
            [[row["x"], row[value_name]] for row in rows]))


def _cmd_vp_density(args) -> int:
    _echo_config(args, f" method={args.method} points={args.points}")
    rows, xs, values = _profile_rows(args, "n_vp", args.method)
    _emit_profile(args, rows, "n_vp")
    if args.plot:
        from .plotting import save_profile_figure
        unit = "a.u." if args.x_units == "au" else "1/(m c)"
        save_profile_figure(
            _plot_target(args), xs, values,
            xlabel=f"x ({unit})", ylabel="n_vp (a.u.)",
            title=f"vacuum-polarization density, Z={args.Z:g}, c={args.c:g} "
                  f"({args.method})")
    return 0


def _cmd_uehling(args) -> int:
    _echo_config(args, f" points={args.points}")
    rows, xs, values = _profile_rows(args, "n_vp1", "uehling")
    _emit_profile(args, rows, "n_vp1")
    if args.plot:
        from .plotting import save_profile_figure
        unit = "a.u." if args.x_units == "au" else "1/(m c)"
        save_profile_figure(
            _plot_target(args), xs, values,
            xlabel=f"x ({unit})", ylabel="n_vp1 (a.u.)",
            title=f"first-order vacuum density, Z={args.Z:g}, c={args.c:g}")
    return 0


def _cmd_vacuum_charge(args) -> int:
    params = _params_from(args)
    spec = _spec_from(args)
    _echo_config(args, f" number_cutoff={args.number_cutoff:g}")
    integral, z_obs = vacuum_charge_summary(params)
    charges = vacuum_numbers(params, spec, cutoff_in_mc=args.number_cutoff)
    obj = {
        "Z": params.Z,
        "c": params.c,
        "m": params.m,
        "integral": integral,
        "z_obs": z_obs,
        "n_e": charges.n_e,
        "n_p": charges.n_p,
        "n_net": charges.n_net,
        "n_net_error_estimate": charges.error_estimate,
        "number_cutoff_in_mc": charges.cutoff_in_mc,
    }
    if args.format == "json":
        _write_output(args, _json_text(obj))
    else:
        header = list(obj)
        _write_output(args, _csv_text(header, [[obj[h] for h in header]]))
    return 0


def _scan_values(args) -> list[float]:
    if args.steps < 2:
        raise SystemExit(_usage(f"--steps must be >= 2, got {args.steps}"))
    lo, hi = args.scan_from, args.scan_to
    if args.spacing == "log":
        if lo <= 0.0 or hi <= 0.0:
            raise SystemExit(_usage("log spacing requires positive bounds"))
        ratio = (hi / lo) ** (1.0 / (args.steps - 1))
        return [lo * ratio**i for i in range(args.steps)]
    step = (hi - lo) / (args.steps - 1)
    return [lo + i * step for i in range(args.steps)]


def _cmd_scan(args) -> int:
    spec = _spec_from(args)
    values = _scan_values(args)
    _echo_config(args, f" variable={args.variable} steps={args.steps}")

    def params_at(v: float) -> ModelParams:
        if args.variable == "Z":
            return ModelParams(Z=v, c=args.c, m=args.m)
        if v <= 0.0:
            raise ValueError("inv_c scan values must be positive")
        return ModelParams(Z=args.Z, c=1.0 / v, m=args.m)

    # validate the whole range before any work
    for v in values:
        params_at(v)

    def evaluate(v: float) -> dict:
        bd = breakdown(params_at(v), spec)
        row = {
            args.variable: v,
            "zeroth": bd.zeroth,
            "dc": bd.dc,
            "xc": bd.xc,
            "db": bd.db,
            "xb": bd.xb,
            "total_vp": bd.total_vp,
        }
        for name, err in bd.error_estimates.items():
            row[f"{name}_error_estimate"] = err
        return row

    rows = _map_ordered(evaluate, values)
    if args.format == "json":
        _write_output(args, _json_text(rows))
    else:
        header = [args.variable, "zeroth", "dc", "xc", "db", "xb", "total_vp"]
        _write_output(args, _csv_text(header, [[row[h] for h in header] for row in rows]))
    if args.plot:
        from .plotting import save_scan_figure
        fixed = f"c={args.c:g}" if args.variable == "Z" else f"Z={args.Z:g}"
        save_scan_figure(_plot_target(args), args.variable, rows,
                         title=f"first-order corrections vs {args.variable} ({fixed})")
    return 0


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qed1d",
        description="Vacuum polarization and first-order QED energy shifts "
                    "of the 1D hydrogen-like Dirac atom.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_energy = sub.add_parser("energy", help="first-order energy corrections")
    _add_common(p_energy, default_format="json")
    p_energy.add_argument("--scaled", action="store_true",
                          help="report corrections in units of m*Z^4/(8 c^2)")
    p_energy.set_defaults(handler=_cmd_energy)

    p_vp = sub.add_parser("vp-density", help="vacuum-polarization density profile")
    _add_common(p_vp, default_format="csv")
    p_vp.add_argument("--method", choices=_PROFILE_METHODS, default="spectral")
    _add_grid(p_vp)
    p_vp.set_defaults(handler=_cmd_vp_density)

    p_ue = sub.add_parser("uehling", help="first-order (Uehling-type) density profile")
    _add_common(p_ue, default_format="csv")
    _add_grid(p_ue)
    p_ue.set_defaults(handler=_cmd_uehling)

    p_vc = sub.add_parser("vacuum-charge",
                          help="integrated vacuum charge and particle numbers")
    _add_common(p_vc, default_format="json")
    p_vc.add_argument("--number-cutoff", type=float, default=DEFAULT_NUMBER_CUTOFF,
                      dest="number_cutoff",
                      help="momentum cutoff for the particle numbers, in m*c")
    p_vc.set_defaults(handler=_cmd_vacuum_charge)

    p_scan = sub.add_parser("scan", help="parameter scan of the energy breakdown")
    _add_common(p_scan, default_format="csv")
    p_scan.add_argument("--variable", choices=("Z", "inv_c"), required=True)
    p_scan.add_argument("--from", type=float, required=True, dest="scan_from")
    p_scan.add_argument("--to", type=float, required=True, dest="scan_to")
    p_scan.add_argument("--steps", type=int, required=True)
    p_scan.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p_scan.add_argument("--quantity", choices=("energy-breakdown",),
                        default="energy-breakdown")
    p_scan.add_argument("--plot", action="store_true",
                        help="also render a figure next to the output file")
    p_scan.set_defaults(handler=_cmd_scan)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except QuadratureError as exc:
        print(f"qed1d: computation failed: {exc}", file=sys.stderr)
        return 4
    except (ValueError, ArithmeticError) as exc:
        print(f"qed1d: invalid parameters: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"qed1d: cannot write output: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
