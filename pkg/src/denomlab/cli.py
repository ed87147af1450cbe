"""Command-line entry point.

Subcommands: qmin, farey, analytic, experiment (qmin-dist, qmin-moment,
void, pigeonhole, dist-moment), resonance.  Exit codes: 0 success, 2 usage
or input error, 1 runtime failure.  File output is atomic.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import analytic, resonance, stats
from .exactnum import rat_parse, rat_str
from .farey import FareyLevel, farey_count, iter_farey
from .output import csv_text, emit, fmt_value, json_text
from .qmin import qmin_1d_fast, qmin_nd_search
from .regions import QueryRegion, region_parse, unit_box


class UsageError(Exception):
    pass


def _default_threads() -> int:
    raw = os.environ.get("DENOMLAB_THREADS", "1")
    try:
        t = int(raw)
    except ValueError:
        raise UsageError(f"DENOMLAB_THREADS must be an integer, got {raw!r}")
    if t < 1:
        raise UsageError("thread count must be >= 1")
    return t


def _parse_complex(text: str) -> complex:
    """Accept plain reals and a+bi / a-bi forms."""
    try:
        return complex(text.strip().replace("i", "j").replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse number {text!r}")


def _parse_rat_vector(text: str) -> tuple[Fraction, ...]:
    return tuple(rat_parse(part) for part in text.split(","))


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_qmin(args) -> int:
    x = _parse_rat_vector(args.x)
    delta = rat_parse(args.delta)
    region = region_parse(args.region) if args.region else unit_box(len(x))
    if region.dim != len(x):
        raise UsageError(f"region is {region.dim}-dimensional but x has {len(x)} coordinates")
    query = QueryRegion(region, x, delta)
    answer = qmin_1d_fast(query) if len(x) == 1 else qmin_nd_search(query)
    emit(json_text({"q": answer.q, "witness": str(answer.witness)}), args.out)
    return 0


def _cmd_farey(args) -> int:
    level = FareyLevel(args.n, rat_parse(args.Q))
    if args.count_only:
        count, ratio = farey_count(level)
        emit(json_text({"count": count, "count_over_sigma_Q": ratio}), args.out)
        return 0
    header = ["q"] + [f"p{i + 1}" for i in range(args.n)]
    rows = [(q, *p) for p, q in iter_farey(level)]
    emit(csv_text(header, rows), args.out)
    return 0


def _cmd_analytic(args) -> int:
    at = _parse_complex(args.at)
    if args.fn == "H":
        if at.imag:
            raise UsageError("H takes a real argument")
        h = analytic.hall_H(at.real)
        payload = {"fn": "H", "input": at.real, "value": h.value, "branch": h.branch}
    elif args.fn == "eta":
        if at.imag:
            raise UsageError("eta takes a real argument")
        payload = {"fn": "eta", "input": at.real,
                   "value": analytic.eta_density(at.real), "method": "closed"}
    else:
        if args.method == "quad":
            m = analytic.moment_M_quadrature(at)
        else:
            m = analytic.moment_M_closed(at)
        value = m.value.real if m.value.imag == 0 else m.value
        payload = {"fn": "M", "input": fmt_value(at), "value": fmt_value(value),
                   "method": m.method}
    emit(json_text(payload), args.out)
    return 0


def plan_load(args, kind: str) -> stats.ExperimentPlan:
    """Build a plan from --plan JSON or from flags; all errors reported at once."""
    fields = {}
    if args.plan:
        try:
            with open(args.plan) as fh:
                fields = json.load(fh)
        except OSError as e:
            raise UsageError(f"cannot read plan file: {e}")
        except json.JSONDecodeError as e:
            raise UsageError(f"malformed plan JSON at line {e.lineno} column {e.colno}: {e.msg}")
        if not isinstance(fields, dict):
            raise UsageError("plan JSON must be an object")
    for key in ("n", "mode", "delta", "region", "D", "x0", "N", "samples", "seed"):
        flag = getattr(args, key, None)
        if flag is not None:
            fields[key] = flag

    errors = []
    n = fields.get("n")
    if not isinstance(n, int) or n < 1:
        errors.append("n must be a positive integer")
        n = 1
    mode = fields.get("mode", "continuous-mc")
    try:
        delta = rat_parse(str(fields["delta"])) if "delta" in fields else None
    except (ValueError, ZeroDivisionError):
        errors.append(f"cannot parse delta {fields.get('delta')!r}")
        delta = None
    if delta is None and "delta" not in fields:
        errors.append("delta is required")

    def parse_region(key, fallback):
        raw = fields.get(key)
        if raw is None:
            return fallback
        try:
            return region_parse(str(raw))
        except ValueError as e:
            errors.append(f"{key}: {e}")
            return fallback

    region = parse_region("region", unit_box(n))
    D = parse_region("D", unit_box(n))
    x0 = ()
    if fields.get("x0") is not None:
        try:
            x0 = _parse_rat_vector(str(fields["x0"]))
        except (ValueError, ZeroDivisionError):
            errors.append(f"cannot parse x0 {fields['x0']!r}")
    seed = fields.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        errors.append("seed must be a nonnegative integer")
        seed = 0
    if errors:
        raise UsageError("invalid plan: " + "; ".join(errors))
    try:
        plan = stats.ExperimentPlan(
            n=n, mode=mode, delta=delta, region=region, D=D, x0=x0,
            N=fields.get("N"), samples=fields.get("samples"), seed=seed,
            threads=args.threads,
        )
    except ValueError as e:
        raise UsageError(f"invalid plan: {e}")
    for w in plan.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return plan


def _cmd_experiment(args) -> int:
    kind = args.kind
    fmt = args.format

    if kind == "qmin-dist":
        plan = plan_load(args, kind)
        grid = _parse_float_list(args.L_grid) if args.L_grid else [
            round(0.1 * k, 10) for k in range(1, 51)]
        result = stats.qmin_distribution_experiment(plan, grid)
        rows = result.rows()
        header = ["L", "empirical_survival", "model_survival"]
        if args.svg:
            from .output import write_atomic
            svg = stats.histogram_emit(
                result.rescaled.values, bins=50, fmt="svg",
                model=analytic.eta_density if plan.n == 1 else None,
                title="rescaled smallest denominator")
            write_atomic(args.svg, svg)
        payload = {"rows": [dict(zip(header, r)) for r in rows]}
    elif kind == "qmin-moment":
        plan = plan_load(args, kind)
        if args.alpha is None:
            raise UsageError("qmin-moment requires --alpha")
        value = stats.qmin_moment_experiment(plan, _parse_complex(args.alpha))
        header = ["alpha", "estimate"]
        rows = [(args.alpha, fmt_value(value.real if value.imag == 0 else value))]
        payload = {"alpha": args.alpha,
                   "estimate": fmt_value(value.real if value.imag == 0 else value)}
    elif kind == "void":
        if args.Q is None or args.s is None:
            raise UsageError("void requires --n, --Q and --s")
        result = stats.void_statistic_experiment(
            args.n or 1, rat_parse(args.Q), float(args.s),
            samples=args.samples or 10000, seed=args.seed or 0,
            threads=args.threads)
        header = ["k", "frequency", "stderr"]
        rows = [(int(k), float(f), float(e)) for k, f, e in
                zip(result.k_values, result.frequencies, result.stderr)]
        payload = {"Q": rat_str(result.Q), "s": result.s,
                   "rows": [dict(zip(header, r)) for r in rows]}
    elif kind == "pigeonhole":
        if args.N is None or args.Q is None:
            raise UsageError("pigeonhole requires --N and --Q")
        hist = stats.pigeonhole_experiment(
            args.n or 1, args.N, rat_parse(args.Q),
            x0=_parse_rat_vector(args.x0) if args.x0 else (),
            s=float(args.s) if args.s is not None else None)
        header = ["k", "cells", "frequency", "stderr"]
        rows = []
        for k in sorted(hist.counts):
            c = hist.counts[k]
            f = c / hist.total_cells
            rows.append((k, c, f, (f * (1.0 - f) / hist.total_cells) ** 0.5))
        payload = {"N": hist.N, "Q": rat_str(hist.Q),
                   "total_cells": hist.total_cells,
                   "rows": [dict(zip(header, r)) for r in rows]}
    elif kind == "dist-moment":
        if args.Q is None or args.beta is None:
            raise UsageError("dist-moment requires --Q and --beta")
        value = stats.distance_moment_experiment(
            args.n or 1, rat_parse(args.Q), _parse_complex(args.beta),
            args.mode or "continuous-mc", N=args.N, samples=args.samples,
            seed=args.seed or 0, norm_id=args.norm, threads=args.threads)
        header = ["beta", "estimate"]
        rows = [(args.beta, fmt_value(value.real if value.imag == 0 else value))]
        payload = {"beta": args.beta,
                   "estimate": fmt_value(value.real if value.imag == 0 else value)}
    else:
        raise UsageError(f"unknown experiment kind {kind!r}")

    text = json_text(payload) if fmt == "json" else csv_text(header, rows)
    emit(text, args.out)
    return 0


def _cmd_resonance(args) -> int:
    rhos = [float(rat_parse(p)) for p in args.rho.split(",")]
    result = resonance.resonance_scaling_experiment(
        args.n, rhos, args.samples, seed=args.seed)
    header = ["rho", "q10", "q50", "q90", "slope_running"]
    if args.format == "json":
        emit(json_text({"rows": [dict(zip(header, r)) for r in result.rows()]}),
             args.out)
    else:
        emit(csv_text(header, result.rows()), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denomlab",
        description="Smallest denominators, Farey statistics, and limit laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qmin", help="smallest denominator of a rational in x + delta*A")
    p.add_argument("--x", required=True, help="query point, comma-separated rationals")
    p.add_argument("--delta", required=True, help="region scale, rational")
    p.add_argument("--region", help="region grammar, e.g. interval:-1/2,1/2:oo")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=_cmd_qmin)

    p = sub.add_parser("farey", help="enumerate or count Farey fractions of level Q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--emit", choices=["csv"], default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=_cmd_farey)

    p = sub.add_parser("analytic", help="evaluate H, eta, or the moment function M")
    p.add_argument("--fn", choices=["H", "eta", "M"], required=True)
    p.add_argument("--at", required=True, help="real or a+bi")
    p.add_argument("--method", choices=["closed", "quad"], default="closed")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=_cmd_analytic)

    p = sub.add_parser("experiment", help="run a statistical experiment")
    p.add_argument("kind", choices=["qmin-dist", "qmin-moment", "void",
                                    "pigeonhole", "dist-moment"])
    p.add_argument("--plan", help="JSON plan file")
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=list(stats.MODES))
    p.add_argument("--delta")
    p.add_argument("--region")
    p.add_argument("--D")
    p.add_argument("--x0")
    p.add_argument("--N", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--Q")
    p.add_argument("--s")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--norm", choices=["euclidean", "sup", "l1"], default="euclidean")
    p.add_argument("--L-grid", dest="L_grid", help="comma-separated L values")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--svg", help="also write an SVG histogram to this path")
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=_cmd_experiment)

    p = sub.add_parser("resonance", help="minimal resonance order scaling experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", required=True, help="comma-separated rho values")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(handler=_cmd_resonance)
    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(e.code or 0)
    try:
        if getattr(args, "threads", None) is None:
            args.threads = _default_threads()
        return args.handler(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except RuntimeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())
