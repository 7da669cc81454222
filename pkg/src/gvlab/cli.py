"""Command-line entry point: ``gvlab <subcommand> [flags]``.

Exit codes: 0 success, 1 usage or validation error, 2 size guard tripped,
3 a verification found a counterexample or an internal invariant broke.
Errors go to stderr as ``ERROR <code>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import asymptotics, code, indicator, roots, verify
from .errors import GVLabError, SizeGuard
from .field import field_make
from .polynomial import format_poly, parse_poly


class UsageError(Exception):
    pass


class InvariantFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- shared flag groups -------------------------------------------------------------

def _field_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, default=2, help="field characteristic (default 2)")
    p.add_argument("--m", type=int, default=1, help="extension degree (default 1)")


def _output_flags(p: argparse.ArgumentParser, default: str, choices=("text", "json", "csv")) -> None:
    p.add_argument("--format", choices=choices, default=default)
    p.add_argument("--out", help="write output here instead of standard output")


def _workers(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=int, default=1)


def _positive(name: str, value: Optional[int], minimum: int = 1) -> None:
    if value is not None and value < minimum:
        raise UsageError(f"--{name} must be >= {minimum}, got {value}")


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required flag(s): " + ", ".join("--" + n for n in missing))


def _spec(args):
    return field_make(args.p, args.m)


def _load_matrix(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc.strerror}") from None
    return code.parse_matrix(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# --- subcommands -----------------------------------------------------------------------
# Each returns (output text, ok flag); ok=False maps to exit code 3.

def cmd_distance(args):
    _need(args, "matrix")
    H = _load_matrix(args.matrix)
    summary = code.min_distance(H, budget=args.budget)
    if args.format == "text":
        s = summary
        return f"n={s.n} k={s.k} d_min={s.d_min} rate={s.rate:.12g} delta={s.delta:.12g}\n", True
    return _dump_json(summary.to_dict()), True


def cmd_oracle_distance(args):
    _need(args, "matrix")
    M = _load_matrix(args.matrix)
    G = code.null_space(M) if args.check else M
    d = code.min_distance_oracle(G)
    if args.format == "text":
        return f"d_min={d}\n", True
    return _dump_json({"n": G.n, "k": G.r, "d_min": d}), True


def cmd_gv_construct(args):
    _need(args, "n", "d")
    spec = _spec(args)
    H = code.gv_greedy_construct(args.n, args.d, spec)
    summary = code.min_distance(H, budget=args.budget)
    if summary.d_min < args.d:
        raise InvariantFailure(f"greedy code has d_min {summary.d_min} < {args.d}")
    if args.format == "json":
        return _dump_json({"r": H.r, "matrix": code.format_matrix(H), **summary.to_dict()}), True
    return code.format_matrix(H), True


def cmd_enumerate(args):
    _need(args, "n")
    wmax = args.wmax if args.wmax is not None else (args.d - 1 if args.d is not None else None)
    if wmax is None:
        raise UsageError("give --wmax or --d")
    spec = _spec(args)
    vecs = list(code.enumerate_low_weight(args.n, wmax, spec))
    rows = [" ".join(":".join(map(str, spec.coords(x))) for x in v) for v in vecs]
    if args.format == "json":
        return _dump_json({"n": args.n, "wmax": wmax, "count": len(vecs), "vectors": rows}), True
    return "".join(r + "\n" for r in rows), True


def cmd_indicator(args):
    _need(args, "matrix", "d")
    H = _load_matrix(args.matrix)
    report = indicator.indicator_product(H, args.d)
    if args.format == "text":
        return f"product={report.product} verdict={str(report.verdict).lower()}\n", True
    return _dump_json(report.to_json()), True


def cmd_p_sum(args):
    _need(args, "n", "r", "d")
    spec = _spec(args)
    if args.method == "exhaustive":
        value = indicator.p_sum_exhaustive(args.n, args.r, args.d, spec, workers=args.workers)
        if args.format == "text":
            return f"P = {value}\n", True
        return _dump_json({"n": args.n, "r": args.r, "d": args.d, "q": spec.q,
                           "method": "exhaustive", "value": value.to_json()}), True
    est = indicator.p_sum_monte_carlo(args.n, args.r, args.d, spec, args.samples, args.seed,
                                      workers=args.workers)
    if args.format == "text":
        return f"P ~ {est.estimate!r} +- {est.stderr!r} ({est.samples} samples)\n", True
    return _dump_json({"n": args.n, "r": args.r, "d": args.d, "q": spec.q, "method": "mc",
                       "seed": args.seed, **est.to_json()}), True


def cmd_expand(args):
    _need(args, "matrix", "d")
    H = _load_matrix(args.matrix)
    poly = indicator.expand_indicator_product(H, args.d)
    if args.format == "json":
        return _dump_json({"poly": format_poly(poly), "degree": poly.degree}), True
    return format_poly(poly) + "\n", True


def cmd_stefanescu(args):
    _need(args, "poly")
    poly = parse_poly(args.poly)
    bound = roots.stefanescu_bound(poly)
    root = roots.largest_positive_root(poly, args.tol)
    ok = root is None or bound >= root - args.tol
    if args.format == "json":
        return _dump_json({"poly": format_poly(poly), "B3": bound, "largest_root": root,
                           "holds": ok}), ok
    root_txt = "none" if root is None else f"≈ {root:.6f}"
    return f"B3 = {bound:.12g}, largest root {root_txt}\n", ok


def cmd_roots(args):
    _need(args, "poly")
    poly = parse_poly(args.poly)
    root = roots.largest_positive_root(poly, args.tol)
    out = {
        "poly": format_poly(poly),
        "sign_variations": roots.sign_variations(poly),
        "cauchy_bound": str(roots.cauchy_bound(poly)),
        "largest_positive_root": root,
    }
    try:
        out["reciprocal"] = format_poly(roots.reciprocal_polynomial(poly))
    except GVLabError:
        out["reciprocal"] = None
    if args.format == "json":
        return _dump_json(out), True
    return "".join(f"{k}: {v}\n" for k, v in out.items()), True


def cmd_gv_curve(args):
    q = args.p ** args.m
    _positive("samples", args.samples, 2)
    curves = asymptotics.curve_table(q, args.samples or 11, n_finite=args.n, greedy_n=args.greedy_n)
    if args.format == "json":
        return _dump_json([
            {"q": c.q, "label": c.label,
             "points": [{"delta": p.delta, "rate": p.rate, "n": p.n, "gap": p.gap} for p in c.points]}
            for c in curves
        ]), True
    header = "# finite-n points use delta = (d-1)/n\n"
    return header + asymptotics.curves_to_csv(curves), True


def cmd_rhs5t(args):
    _need(args, "n", "d")
    spec = _spec(args)
    row = None
    if args.row:
        row = [spec.from_coords([int(c) for c in t.split(":")]) for t in args.row.split()]
    value = asymptotics.rhs_5t_sum(args.n, args.d, spec, row)
    if args.format == "json":
        return _dump_json({"n": args.n, "d": args.d, "q": spec.q, "log_q_sum": value}), True
    return f"{value:.12g}\n", True


def cmd_gap(args):
    _need(args, "n", "d")
    q = args.p ** args.m
    gap = asymptotics.tightness_gap(args.n, args.d, q)
    delta = (args.d - 1) / args.n
    if args.format == "json":
        return _dump_json({"n": args.n, "d": args.d, "q": q, "delta": delta, "gap": gap}), True
    if args.format == "csv":
        return f"q,n,d,delta,gap\n{q},{args.n},{args.d},{delta:.12g},{gap:.12g}\n", True
    return f"gap = {gap:.12g} at delta = (d-1)/n = {delta:.12g}\n", True


def _report(rep, fmt):
    if fmt == "json":
        return _dump_json(rep.to_json()), rep.ok
    return rep.summary() + "\n", rep.ok


def cmd_verify_indicator(args):
    _need(args, "n", "r")
    rep = verify.verify_indicator(args.n, args.r, args.d, _spec(args), exhaustive=args.exhaustive,
                                  samples=args.samples or 1000, seed=args.seed, workers=args.workers)
    return _report(rep, args.format)


def cmd_verify_lemma(args):
    rep = verify.verify_lemma(args.samples or 10_000, args.seed, args.tol, workers=args.workers)
    return _report(rep, args.format)


def cmd_verify_expansion(args):
    rep = verify.verify_expansion(args.samples or 1000, args.seed, args.tol)
    return _report(rep, args.format)


def cmd_verify_greedy(args):
    qs = tuple(int(x) for x in args.q.split(","))
    rep = verify.verify_greedy(args.n or 12, qs, workers=args.workers)
    return _report(rep, args.format)


# --- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gvlab", description="Coding-bound laboratory for linear codes.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="subcommand")
    sub.required = True

    def add(name: str, fn: Callable, help: str, fmt: str = "json"):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=fn)
        _output_flags(p, fmt)
        p.add_argument("--budget", type=int, default=None,
                       help="enumeration budget (default GVLAB_BUDGET or 2^28)")
        return p

    p = add("distance", cmd_distance, "exact minimum distance of a check matrix")
    p.add_argument("--matrix", required=False)

    p = add("oracle-distance", cmd_oracle_distance, "minimum distance by codeword enumeration")
    p.add_argument("--matrix")
    p.add_argument("--check", action="store_true", help="file holds a check matrix, not a generator")

    p = add("gv-construct", cmd_gv_construct, "greedy GV check matrix", fmt="text")
    _field_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)

    p = add("enumerate", cmd_enumerate, "nonzero words of weight <= wmax", fmt="text")
    _field_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--wmax", type=int)
    p.add_argument("--d", type=int, help="shorthand for --wmax d-1")

    p = add("indicator", cmd_indicator, "indicator product of a matrix")
    p.add_argument("--matrix")
    p.add_argument("--d", type=int)

    p = add("p-sum", cmd_p_sum, "P_q(r, d) summed over all matrices")
    _field_flags(p)
    _workers(p)
    for flag in ("n", "r", "d"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--method", choices=("exhaustive", "mc"), default="exhaustive")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = add("expand", cmd_expand, "indicator product as a polynomial in X = q^r", fmt="text")
    p.add_argument("--matrix")
    p.add_argument("--d", type=int)

    p = add("stefanescu", cmd_stefanescu, "Stefanescu positive-root bound", fmt="text")
    p.add_argument("--poly")
    p.add_argument("--tol", type=float, default=1e-12)

    p = add("roots", cmd_roots, "largest positive root and related data", fmt="text")
    p.add_argument("--poly")
    p.add_argument("--tol", type=float, default=1e-12)

    p = add("gv-curve", cmd_gv_curve, "GV and finite-n bound curves", fmt="csv")
    _field_flags(p)
    p.add_argument("--samples", type=int, default=11, help="number of delta samples")
    p.add_argument("--n", type=int, help="finite length for the character-sum curve")
    p.add_argument("--greedy-n", type=int, help="length for greedy-code points")

    p = add("rhs5t", cmd_rhs5t, "log_q of the character sum at a reference row", fmt="text")
    _field_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--row", help="reference row, space-separated elements (default zero row)")

    p = add("gap", cmd_gap, "finite-n gap to the GV rate", fmt="text")
    _field_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)

    p = add("verify-indicator", cmd_verify_indicator, "indicator verdict vs brute force", fmt="text")
    _field_flags(p)
    _workers(p)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int, help="single d (default: every d in [2, n])")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = add("verify-lemma", cmd_verify_lemma, "Stefanescu bound soundness", fmt="text")
    _workers(p)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("verify-expansion", cmd_verify_expansion, "expansion vs indicator product", fmt="text")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("verify-greedy", cmd_verify_greedy, "greedy GV codes meet their guarantee", fmt="text")
    _workers(p)
    p.add_argument("--n", type=int, help="largest block length (default 12)")
    p.add_argument("--q", default="2,3,4", help="comma-separated field orders")
    return parser


def _validate(args) -> None:
    for name in ("n", "r", "samples", "workers", "budget", "greedy_n"):
        _positive(name, getattr(args, name, None))
    if getattr(args, "tol", None) is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        saved = os.environ.get("GVLAB_BUDGET")
        if args.budget is not None:
            os.environ["GVLAB_BUDGET"] = str(args.budget)
        try:
            text, ok = args.func(args)
        finally:
            if saved is None:
                os.environ.pop("GVLAB_BUDGET", None)
            else:
                os.environ["GVLAB_BUDGET"] = saved
    except UsageError as exc:
        return _fail(1, str(exc))
    except SizeGuard as exc:
        return _fail(2, str(exc))
    except (InvariantFailure, AssertionError) as exc:
        return _fail(3, str(exc) or type(exc).__name__)
    except GVLabError as exc:
        return _fail(1, f"{type(exc).__name__}: {exc}")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not ok:
        return _fail(3, "verification found counterexamples")
    return 0


def _fail(code_: int, message: str) -> int:
    sys.stderr.write(f"ERROR {code_}: {message}\n")
    return code_


def main() -> None:
    sys.exit(run_cli())
