"""Command-line interface.

    regdegen generate [--config run.json] [flags]   write verified datasets
    regdegen verify FILE [flags]                    check a CSV against targets
    regdegen quartet OUTDIR                         dump Anscombe's quartet + tables
    regdegen plot FILE... -o OUT.svg                scatter panels with the line

Constraint flags default to Anscombe's values (N=11, x̄=9, σx²=11, ȳ=7.5,
σy²=4.125, β1=0.5).  Indices given on the command line are 1-based.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import quartet
from .adjust import AdjustmentPlan, GroupPlan, generate
from .constraints import ANSCOMBE, ConstraintSet
from .errors import InfeasibleError
from .io import read_dataset, write_dataset
from .shapes import (
    BimodalNoise, LinearNoise, LinearOutlier, OnLine, Quadratic, Quartic, is_seeded, reseed,
)
from .stats import linregress, mean, variance
from .verify import moment_report, verify
from .xgen import Branch, XGridSpec

OUT_ENV = "REGDEGEN_OUT"

SHAPES = ("online", "linear-noise", "quadratic", "linear-outlier", "bimodal-noise", "quartic")

DEFAULTS = {
    "n": ANSCOMBE.n,
    "mean_x": ANSCOMBE.mean_x,
    "var_x": ANSCOMBE.var_x,
    "mean_y": ANSCOMBE.mean_y,
    "var_y": ANSCOMBE.var_y,
    "beta1": ANSCOMBE.beta1,
    "x": "uniform",
    "x_values": None,
    "x_branch": "+",
    "shape": "linear-noise",
    "noise_sd": math.sqrt(1.376),
    "quad_branch": "right",
    "beta0p": 4.01,
    "beta1p": 0.3454,
    "outlier_index": 10,
    "outlier_y": 12.74,
    "f0": [math.sqrt(2) * 1e-2],
    "roots": [4.150, 7.480, 10.710, 13.850],
    "jitter_sd": 0.5,
    "seed": 0,
    "count": 1,
    "branch": "+",
    "triple": "auto",
    "tol": 1e-6,
    "out": None,
    "format": "text",
    "retries": 50,
}


def _floats(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).split(",") if v.strip()]


def _add_constraint_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("constraints")
    g.add_argument("--n", type=int)
    g.add_argument("--mean-x", type=float)
    g.add_argument("--var-x", type=float)
    g.add_argument("--mean-y", type=float)
    g.add_argument("--var-y", type=float)
    g.add_argument("--beta1", type=float)
    p.add_argument("--config", help="flat JSON object; keys are long flag names with underscores")


def _merged(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        with open(args.config) as f:
            loaded = json.load(f)
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a flat JSON object")
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(loaded)
    for k, v in vars(args).items():
        if k in DEFAULTS and v is not None:
            cfg[k] = v
    return cfg


def _constraints(cfg: dict) -> ConstraintSet:
    return ConstraintSet(int(cfg["n"]), float(cfg["mean_x"]), float(cfg["var_x"]),
                         float(cfg["mean_y"]), float(cfg["var_y"]), float(cfg["beta1"]))


def _shape(cfg: dict, ordinal: int, seed: int):
    name = cfg["shape"]
    if name == "online":
        return OnLine()
    if name == "linear-noise":
        return LinearNoise(float(cfg["noise_sd"]), seed)
    if name == "quadratic":
        return Quadratic(cfg["quad_branch"])
    if name == "linear-outlier":
        return LinearOutlier(float(cfg["beta0p"]), float(cfg["beta1p"]),
                             int(cfg["outlier_index"]) - 1, float(cfg["outlier_y"]))
    if name == "bimodal-noise":
        return BimodalNoise(float(cfg["noise_sd"]), seed)
    if name == "quartic":
        f0s = _floats(cfg["f0"])
        return Quartic(f0s[ordinal % len(f0s)], tuple(_floats(cfg["roots"])),
                       float(cfg["jitter_sd"]), seed)
    raise ValueError(f"unknown shape {name!r}")


def _xspec(cfg: dict, c: ConstraintSet):
    if cfg.get("x_values"):
        return _floats(cfg["x_values"])
    if cfg["x"] not in ("uniform", "bimodal"):
        raise ValueError(f"unknown x family {cfg['x']!r}")
    return XGridSpec(c.n, c.mean_x, c.var_x, cfg["x"], Branch.parse(cfg["x_branch"]))


def _plan(cfg: dict):
    triple = cfg["triple"]
    if isinstance(triple, str) and triple.strip().lower() in ("auto", "none"):
        t = triple.strip().lower()
        return "auto" if t == "auto" else None
    idx = [int(v) - 1 for v in (triple if isinstance(triple, list) else str(triple).split(","))]
    branch = Branch.parse(cfg["branch"])
    if len(idx) == 3 and cfg["shape"] != "bimodal-noise":
        return AdjustmentPlan(tuple(idx), branch)
    return GroupPlan(tuple(idx), branch)


def _report_text(report, fmt: str) -> str:
    return report.to_json() + "\n" if fmt == "json" else report.to_text() + "\n"


def _generate_one(xspec, cfg, c, plan, ordinal: int):
    """Generate dataset ``ordinal``, reseeding a random shape on infeasibility.

    Retry ``j`` uses ``seed + ordinal + j * count`` so retries never collide
    with another dataset's seed.
    """
    base, count = int(cfg["seed"]), int(cfg["count"])
    shape = _shape(cfg, ordinal, base + ordinal)
    for attempt in range(int(cfg["retries"]) + 1):
        try:
            d, report = generate(xspec, shape, c, plan, tolerance=float(cfg["tol"]))
            return shape, d, report
        except InfeasibleError as exc:
            if not is_seeded(shape) or exc.stage != "adjust" or attempt == int(cfg["retries"]):
                raise
            shape = reseed(shape, base + ordinal + (attempt + 1) * count)
    raise AssertionError("unreachable")


def cmd_generate(args) -> int:
    try:
        cfg = _merged(args)
        c = _constraints(cfg)
        xspec = _xspec(cfg, c)
        plan = _plan(cfg)
        if cfg["format"] not in ("text", "json"):
            raise ValueError(f"unknown format {cfg['format']!r}")
        if int(cfg["count"]) < 1:
            raise ValueError("count must be >= 1")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out = Path(cfg["out"] or os.environ.get(OUT_ENV, "."))
    out.mkdir(parents=True, exist_ok=True)
    ext = "json" if cfg["format"] == "json" else "txt"
    status = 0
    for i in range(int(cfg["count"])):
        stem = f"dataset_{i + 1:03d}"
        try:
            shape, d, report = _generate_one(xspec, cfg, c, plan, i)
        except InfeasibleError as exc:
            print(f"{stem}: error {exc}", file=sys.stderr)
            status = 2
            continue
        write_dataset(out / f"{stem}.csv", d)
        (out / f"{stem}.report.{ext}").write_text(_report_text(report, cfg["format"]))
        print(f"{stem}.csv  {type(shape).__name__}  seed={getattr(shape, 'seed', '-')}  PASS")
    return status


def cmd_verify(args) -> int:
    try:
        cfg = _merged(args)
        c = _constraints(cfg)
        d = read_dataset(args.path)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = verify(d, c, float(cfg["tol"]))
    sys.stdout.write(_report_text(report, cfg["format"]))
    return 0 if report.ok else 1


def quartet_tables() -> tuple[str, str]:
    """Statistics and z-score moment tables for the quartet, as CSV text."""
    stats = ["dataset,n,mean_x,var_x,mean_y,var_y,beta1,beta0,r_squared"]
    moments = ["dataset,skew_x,kurt_x,skew_y,kurt_y"]
    for name, d in quartet.load_all().items():
        fit = linregress(d)
        stats.append(
            f"{name},{len(d)},{mean(d.xs):.2f},{variance(d.xs):.2f},{mean(d.ys):.2f},"
            f"{variance(d.ys):.3f},{fit.beta1:.3f},{fit.beta0:.2f},{fit.r_squared:.3f}")
        m = moment_report(d)
        moments.append(f"{name},{m.skew_x:.3f},{m.kurt_x:.3f},{m.skew_y:.3f},{m.kurt_y:.3f}")
    return "\n".join(stats) + "\n", "\n".join(moments) + "\n"


def cmd_quartet(args) -> int:
    out = Path(args.outdir or os.environ.get(OUT_ENV, "."))
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name in quartet.NAMES:
            (out / f"anscombe_{name}.csv").write_text(quartet.csv_text(name))
        stats, moments = quartet_tables()
        (out / "statistics.csv").write_text(stats)
        (out / "moments.csv").write_text(moments)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(stats + "\n" + moments)
    return 0


def cmd_plot(args) -> int:
    from .plot import build_figure, save_plot

    try:
        cfg = _merged(args)
        c = _constraints(cfg)
        datasets = {Path(p).stem: read_dataset(p) for p in args.paths}
        save_plot(build_figure(datasets, c), args.output)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.output} ({len(datasets)} panel{'s' if len(datasets) != 1 else ''})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regdegen",
        description="Generate datasets that share N, means, variances and regression slope.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate verified datasets")
    _add_constraint_flags(g)
    g.add_argument("--x", choices=("uniform", "bimodal"), help="x-grid family")
    g.add_argument("--x-values", help="explicit comma-separated x grid (overrides --x)")
    g.add_argument("--x-branch", help="bimodal outlier side: + (above mean) or -")
    g.add_argument("--shape", choices=SHAPES)
    g.add_argument("--noise-sd", type=float, help="noise sd for linear-noise / bimodal-noise")
    g.add_argument("--quad-branch", choices=("left", "right"))
    g.add_argument("--beta0p", type=float, help="linear-outlier shape intercept")
    g.add_argument("--beta1p", type=float, help="linear-outlier shape slope")
    g.add_argument("--outlier-index", type=int, help="1-based index of the outlier")
    g.add_argument("--outlier-y", type=float)
    g.add_argument("--f0", help="quartic weight(s), comma-separated; cycled across the batch")
    g.add_argument("--roots", help="four comma-separated quartic roots")
    g.add_argument("--jitter-sd", type=float, help="quartic jitter sd")
    g.add_argument("--seed", type=int)
    g.add_argument("--count", type=int)
    g.add_argument("--branch", help="root to keep: + or -")
    g.add_argument("--triple", help="p1,p2,p3 (1-based), 'auto' or 'none'")
    g.add_argument("--retries", type=int, help="reseed attempts after an infeasible adjustment")
    g.add_argument("--tol", type=float)
    g.add_argument("--out", help=f"output directory (default ${OUT_ENV} or .)")
    g.add_argument("--format", choices=("text", "json"))
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="verify a CSV dataset against the constraints")
    v.add_argument("path")
    _add_constraint_flags(v)
    v.add_argument("--tol", type=float)
    v.add_argument("--format", choices=("text", "json"))
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("quartet", help="write Anscombe's quartet and its tables")
    q.add_argument("outdir", nargs="?")
    q.set_defaults(func=cmd_quartet)

    p = sub.add_parser("plot", help="plot datasets with the target regression line")
    p.add_argument("paths", nargs="+")
    p.add_argument("-o", "--output", required=True)
    _add_constraint_flags(p)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
