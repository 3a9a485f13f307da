"""Command-line interface.

Four subcommands: bound (all bounds attached to a scenario), exact
(reference densities), check (exact vs band, exit 1 on violation), and
figure (columnar data plus a PNG rendering).

Every JSON output is wrapped in a versioned envelope; QEI_TOL may override
the default tolerance map with a JSON object.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import __version__, bounds, exact, report
from .errors import DomainError, QeiError, UnsupportedScenario
from .numerics import DEFAULT_TOLERANCES

import numpy as np


def _float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if math.isnan(value):
        raise argparse.ArgumentTypeError("NaN is not a valid parameter")
    return value


def load_tolerances(env=None) -> dict[str, float]:
    """Default tolerance map merged with the QEI_TOL environment override
    (a JSON object with a subset of the known keys)."""
    tol: dict[str, float] = dict(DEFAULT_TOLERANCES)
    raw = (env if env is not None else os.environ).get("QEI_TOL")
    if raw:
        try:
            override = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"QEI_TOL is not valid JSON: {exc}")
        if not isinstance(override, dict):
            raise ValueError("QEI_TOL must be a JSON object")
        for key, val in override.items():
            if key not in tol:
                raise ValueError(
                    f"unknown tolerance {key!r}; known keys: {sorted(tol)}"
                )
            if isinstance(val, bool) or not isinstance(val, (int, float)) or not val > 0:
                raise ValueError(f"tolerance {key!r} must be a positive number")
            tol[key] = int(val) if key == "oracle_grid" else float(val)
    return tol


def _jsonable(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def make_envelope(command: str, params: dict, results: list[dict], tol: dict) -> dict:
    return {
        "command": command,
        "params": _jsonable(params),
        "results": [_jsonable(r) for r in results],
        "tool_version": __version__,
        "tolerances": dict(tol),
    }


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _flatten(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, dict):
            for kk, vv in _flatten(v).items():
                out[f"{k}_{kk}"] = vv
        elif isinstance(v, (list, tuple)):
            for i, vv in enumerate(v):
                out[f"{k}_{i}"] = vv
        else:
            out[k] = v
    return out


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _csv_text(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    header = list(flat[0]) if flat else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in flat:
        writer.writerow([_cell(row[key]) for key in header])
    return buf.getvalue()


def _figure_csv(data: report.FigureData) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([data.grid_name] + list(data.columns))
    for i, g in enumerate(data.grid):
        cells = [f"{g:.17g}"]
        cells.extend(f"{data.columns[c][i]:.17g}" for c in data.columns)
        writer.writerow(cells)
    return buf.getvalue()


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit(args, command: str, params: dict, rows: list[dict], tol: dict) -> None:
    if args.format == "csv":
        _write(_csv_text(rows), args.out)
    else:
        _write(_json_text(make_envelope(command, params, rows, tol)), args.out)


# ---------------------------------------------------------------------------
# scenario construction
# ---------------------------------------------------------------------------


def _scenario_from_args(args) -> tuple[bounds.Scenario, dict]:
    s = args.scenario
    if s == "inertial":
        return (
            bounds.MinkowskiInertial(args.d, args.tau0),
            {"scenario": s, "d": args.d, "tau0": args.tau0},
        )
    if s == "null":
        return (
            bounds.MinkowskiNull(args.tau0, args.uk),
            {"scenario": s, "tau0": args.tau0, "uk": args.uk},
        )
    if s == "accel":
        return (
            bounds.UniformAccel(args.alpha, args.tau0),
            {"scenario": s, "alpha": args.alpha, "tau0": args.tau0},
        )
    if s == "conformal2d":
        return (
            bounds.Conformal2D(args.shift, args.tau0),
            {"scenario": s, "shift": args.shift, "tau0": args.tau0},
        )
    if s == "linear-accel-2d":
        return bounds.LinearAccel2D(args.p), {"scenario": s, "p": args.p}
    if s == "cylinder":
        return (
            bounds.Cylinder(args.L, args.beta),
            {"scenario": s, "L": args.L, "beta": args.beta},
        )
    if s == "torus":
        lengths = tuple(args.L)
        if args.j is not None and args.j != len(lengths):
            raise DomainError(
                f"--j {args.j} does not match {len(lengths)} lengths"
            )
        return bounds.Torus(lengths), {"scenario": s, "lengths": list(lengths)}
    if s == "misner":
        params = {"scenario": s, "a": args.a, "t": args.t}
        eps = getattr(args, "epsilon", None)
        if eps is not None:
            params["epsilon"] = eps
        return bounds.Misner(args.a, args.t), params
    if s == "rindler":
        return (
            bounds.Rindler(args.xi, args.zeta),
            {"scenario": s, "xi": args.xi, "zeta": args.zeta},
        )
    if s == "static-ball":
        return (
            bounds.StaticBall(args.d, args.r),
            {"scenario": s, "d": args.d, "r": args.r},
        )
    raise UnsupportedScenario(s)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def cmd_bound(args, tol) -> int:
    scenario, params = _scenario_from_args(args)
    rows = [
        {"direction": r.direction, "label": r.label, "value": r.value}
        for r in bounds.bounds_for(scenario)
    ]
    _emit(args, "bound", params, rows, tol)
    return 0


def cmd_exact(args, tol) -> int:
    series_rel = tol["series_rel"]
    scenario, params = _scenario_from_args(args)
    if isinstance(scenario, bounds.Cylinder):
        r = exact.cylinder_thermal_density(scenario.L, scenario.beta, series_rel)
        rows = [
            {"value": r.value, "n_terms": r.n_terms, "tail_bound": r.tail_bound}
        ]
    elif isinstance(scenario, bounds.Torus):
        stress, density = exact.torus_stress(scenario.lengths)
        rows = [
            {
                "energy_density": density.value,
                "n_terms": density.n_terms,
                "tail_bound": density.tail_bound,
                "components": list(stress.components),
                "frame": stress.frame,
            }
        ]
    elif isinstance(scenario, bounds.Misner):
        eps = args.epsilon
        pref = exact.misner_prefactor(scenario.a, eps, series_rel)
        stress, density = exact.misner_density(
            scenario.a, scenario.t, eps, series_rel
        )
        rows = [
            {
                "prefactor": pref.value,
                "energy_density": density.value,
                "n_terms": density.n_terms,
                "tail_bound": density.tail_bound,
                "components": list(stress.components),
                "frame": stress.frame,
            }
        ]
    elif isinstance(scenario, bounds.Rindler):
        rows = [{"value": exact.rindler_density(scenario.xi, scenario.zeta)}]
    else:
        raise UnsupportedScenario(type(scenario).__name__)
    _emit(args, "exact", params, rows, tol)
    return 0


def cmd_check(args, tol) -> int:
    scenario, params = _scenario_from_args(args)
    rep = report.check(scenario, tol["series_rel"])
    rows = [
        {
            "exact": rep.exact,
            "lower": rep.lower,
            "upper": rep.upper,
            "lower_satisfied": rep.lower_satisfied,
            "upper_satisfied": rep.upper_satisfied,
            "margin_lower": rep.margin_lower,
            "saturation": rep.saturation,
        }
    ]
    _emit(args, "check", params, rows, tol)
    return 0 if rep.lower_satisfied else 1


def _figure_grid(args) -> np.ndarray | None:
    custom = [args.points is not None, args.lo is not None, args.hi is not None]
    if not any(custom):
        return None
    if not all(custom):
        raise DomainError("--points, --lo and --hi must be given together")
    if args.points < 2:
        raise DomainError("--points must be at least 2")
    if not args.lo < args.hi:
        raise DomainError("--lo must be below --hi")
    if args.id == "accn-evals":
        if not args.lo > 0:
            raise DomainError("--lo must be positive for a log grid")
        return np.logspace(math.log10(args.lo), math.log10(args.hi), args.points)
    return np.linspace(args.lo, args.hi, args.points)


def cmd_figure(args, tol) -> int:
    grid = _figure_grid(args)
    if args.id == "accn-evals":
        data = report.figure_accn_evals(grid, args.k)
    elif args.id == "thermal-band":
        data = report.figure_thermal_band(grid)
    else:
        data = report.figure_misner(grid)

    if args.format == "csv":
        text = _figure_csv(data)
    else:
        text = _json_text(
            {
                "id": data.id,
                "grid_name": data.grid_name,
                "grid": list(data.grid),
                "columns": {k: list(v) for k, v in data.columns.items()},
            }
        )
    _write(text, args.out)

    png_path = os.path.splitext(args.out)[0] + ".png"
    from .render import render_png  # defer: pulls in matplotlib

    render_png(data, png_path)

    params = {"id": args.id, "points": len(data.grid), "format": args.format}
    if args.id == "accn-evals":
        params["k"] = args.k
    rows = [{"path": args.out, "png": png_path, "rows": len(data.grid)}]
    sys.stdout.write(_json_text(make_envelope("figure", params, rows, tol)))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument(
        "--format",
        choices=("json", "csv"),
        default=default_format,
        help=f"output format (default {default_format})",
    )
    p.add_argument("--out", help="write output to this path instead of stdout")


def _add_scenarios(sub, names) -> None:
    if "inertial" in names:
        p = sub.add_parser("inertial", help="inertial worldline, d = 2 or 4")
        p.add_argument("--d", type=int, required=True, choices=(2, 4))
        p.add_argument("--tau0", type=_float, required=True)
        _add_common(p)
    if "null" in names:
        p = sub.add_parser("null", help="null-contracted average, d = 4")
        p.add_argument("--tau0", type=_float, required=True)
        p.add_argument("--uk", type=_float, required=True)
        _add_common(p)
    if "accel" in names:
        p = sub.add_parser("accel", help="uniformly accelerated worldline")
        p.add_argument("--alpha", type=_float, required=True)
        p.add_argument("--tau0", type=_float, default=math.inf)
        _add_common(p)
    if "conformal2d" in names:
        p = sub.add_parser("conformal2d", help="2D conformal static worldline")
        p.add_argument("--shift", type=_float, required=True)
        p.add_argument("--tau0", type=_float, default=math.inf)
        _add_common(p)
    if "linear-accel-2d" in names:
        p = sub.add_parser("linear-accel-2d", help="2D linear acceleration")
        p.add_argument("--p", type=_float, required=True)
        _add_common(p)
    if "cylinder" in names:
        p = sub.add_parser("cylinder", help="spatial circle of circumference L")
        p.add_argument("--L", type=_float, required=True)
        p.add_argument("--beta", type=_float, default=math.inf)
        _add_common(p)
    if "torus" in names:
        p = sub.add_parser("torus", help="periodic identifications, 1 to 3 axes")
        p.add_argument(
            "--L",
            type=_float,
            nargs="+",
            required=True,
            metavar="LEN",
            help="compact lengths, ascending",
        )
        p.add_argument("--j", type=int, help="expected axis count (validated)")
        _add_common(p)
    if "misner" in names:
        p = sub.add_parser("misner", help="interior of the identification region")
        p.add_argument("--a", type=_float, required=True)
        p.add_argument("--t", type=_float, default=1.0)
        p.add_argument(
            "--epsilon",
            type=_float,
            default=0.0,
            help="curvature-coupling shift in the exact series",
        )
        _add_common(p)
    if "rindler" in names:
        p = sub.add_parser("rindler", help="static observer in the wedge")
        p.add_argument("--xi", type=_float, required=True)
        p.add_argument("--zeta", type=_float, default=0.0)
        _add_common(p)
    if "static-ball" in names:
        p = sub.add_parser("static-ball", help="center of a static ball")
        p.add_argument("--d", type=int, required=True, choices=(2, 4))
        p.add_argument("--r", type=_float, required=True)
        _add_common(p)


ALL_SCENARIOS = (
    "inertial",
    "null",
    "accel",
    "conformal2d",
    "linear-accel-2d",
    "cylinder",
    "torus",
    "misner",
    "rindler",
    "static-ball",
)
EXACT_SCENARIOS = ("cylinder", "torus", "misner", "rindler")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeiband",
        description="Quantum energy inequality bands: bounds, exact "
        "reference densities, consistency checks and figures.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="evaluate the bounds for a scenario")
    scen = p_bound.add_subparsers(dest="scenario", required=True)
    _add_scenarios(scen, ALL_SCENARIOS)
    p_bound.set_defaults(func=cmd_bound)

    p_exact = sub.add_parser("exact", help="exact reference density")
    scen = p_exact.add_subparsers(dest="scenario", required=True)
    _add_scenarios(scen, EXACT_SCENARIOS)
    p_exact.set_defaults(func=cmd_exact)

    p_check = sub.add_parser(
        "check", help="verify the exact value sits inside the band"
    )
    scen = p_check.add_subparsers(dest="scenario", required=True)
    _add_scenarios(scen, EXACT_SCENARIOS)
    p_check.set_defaults(func=cmd_check)

    p_fig = sub.add_parser("figure", help="figure data plus PNG rendering")
    p_fig.add_argument("id", choices=sorted(report.FIGURES))
    p_fig.add_argument("--k", type=int, default=3, help="branches for accn-evals")
    p_fig.add_argument("--points", type=int, help="custom grid size")
    p_fig.add_argument("--lo", type=_float, help="custom grid start")
    p_fig.add_argument("--hi", type=_float, help="custom grid end")
    p_fig.add_argument("--out", required=True, help="data file to write")
    p_fig.add_argument(
        "--format",
        choices=("json", "csv"),
        default="csv",
        help="data file format (default csv)",
    )
    p_fig.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = load_tolerances()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, tol)
    except (DomainError, UnsupportedScenario) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    except QeiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
