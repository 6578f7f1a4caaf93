"""Command-line interface.

Three subcommands:

* ``eval``   -- tabulate one function over a point or log grid (CSV/JSON)
* ``degree`` -- bracket the complete-monotonicity degree of a built-in
  family (always JSON)
* ``verify`` -- run named identity suites and report pass/fail records
  (always JSON)

Output is deterministic: keys are sorted, numbers are printed to 25
significant digits, and no timestamps or machine details are embedded.

Exit codes: 0 success, 1 at least one verification record failed,
2 usage error, 3 domain error, 4 degree bracketing failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cmdegree import builtin_families, degree_estimate
from .combinatorics import bernoulli
from .errors import BracketError, DomainError, IntegrationError
from .gammakit import binet_check, ln_gamma, polygamma, psi_integral_check
from .kernels import K_kernel, f_kernel, remark1_chain
from .precision import PrecisionContext
from .quadrature import (
    GridSpec,
    bose_moment,
    remark3_inequalities,
    sin_kernel_integral,
    verify_degree_representation,
)
from .remainders import remainder, remainder_d1, remainder_d2, tail_limits

__all__ = ["main"]

_EVAL_HEADS = ("lngamma", "psi", "phi", "polygamma", "R", "R1", "R2", "f", "K")
_KERNEL_HEADS = ("f", "K")
_SUITES = (
    "binet",
    "psi-integral",
    "bose",
    "laplace-rep",
    "remark1",
    "remark2",
    "remark3",
    "remark4",
)
_ANCHORS = {
    "binet": "binet-integral",
    "psi-integral": "psi-log-integral",
    "bose": "bose-moment-closed-form",
    "laplace-rep": "laplace-representation",
    "remark1": "kernel-chain-derivatives",
    "remark2": "sin-moment-positivity",
    "remark3": "cos-moment-bound",
    "remark4": "tail-limit-powers",
}


class UsageError(Exception):
    """Bad command-line input that argparse cannot catch on its own."""


def _fmt(ctx: PrecisionContext, x) -> str:
    """25 significant digits, always scientific notation."""
    x = ctx.mpf(x)
    if x == 0:
        return "0.0"
    return ctx._mp.nstr(x, 25, min_fixed=1, max_fixed=0, strip_zeros=False)


def _emit(text: str, out_path):
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


# -- eval ---------------------------------------------------------------


def _split_fn(name: str):
    head, sep, tail = name.partition(":")
    if head not in _EVAL_HEADS:
        raise UsageError(
            "unknown function %r; expected one of %s" % (name, ", ".join(_EVAL_HEADS))
        )
    if head in ("lngamma", "psi", "phi"):
        if sep:
            raise UsageError("%s takes no index" % head)
        return head, None
    if not sep or not tail:
        raise UsageError("%s needs an index, e.g. %s:1" % (head, head))
    try:
        idx = int(tail)
    except ValueError:
        raise UsageError("bad index %r in %r" % (tail, name))
    return head, idx


def _eval_one(ctx, head, idx, x):
    if head == "lngamma":
        return ln_gamma(ctx, x).value
    if head == "psi":
        return polygamma(ctx, 0, x).value
    if head == "phi":
        return remainder_d1(ctx, 1, x)
    if head == "polygamma":
        return polygamma(ctx, idx, x).value
    if head == "R":
        return remainder(ctx, idx, x)
    if head == "R1":
        return remainder_d1(ctx, idx, x)
    if head == "R2":
        return remainder_d2(ctx, idx, x)
    if head == "f":
        return f_kernel(ctx, idx, x)
    return K_kernel(ctx, idx, x)


def _parse_points(ctx, grid_str: str):
    parts = grid_str.split(":")
    if len(parts) != 3:
        raise UsageError("--grid expects a:b:count, got %r" % grid_str)
    a, b, count_s = parts
    try:
        count = int(count_s)
        fa = float(a)
        fb = float(b)
    except ValueError:
        raise UsageError("--grid expects numeric a:b:count, got %r" % grid_str)
    if count < 1:
        raise UsageError("--grid needs count >= 1, got %d" % count)
    if count == 1 or fa == fb:
        return [ctx.mpf(a)]
    return GridSpec(a, b, count).points(ctx)


def _cmd_eval(args) -> int:
    head, idx = _split_fn(args.fn)
    ctx = PrecisionContext(args.digits)
    if args.t is not None and args.grid:
        raise UsageError("pass --t or --grid, not both")
    if args.t is None and not args.grid:
        raise UsageError("eval needs --t or --grid")
    points = [ctx.mpf(args.t)] if args.t is not None else _parse_points(ctx, args.grid)

    var = "v" if head in _KERNEL_HEADS else "t"
    rows = [(p, _eval_one(ctx, head, idx, p)) for p in points]

    if args.format == "json":
        payload = {
            "config": {"digits": ctx.digits, "fn": args.fn},
            "results": [{var: _fmt(ctx, p), "value": _fmt(ctx, val)} for p, val in rows],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    else:
        lines = ["# fn=%s" % args.fn, "# digits=%d" % ctx.digits, "%s,value" % var]
        lines += ["%s,%s" % (_fmt(ctx, p), _fmt(ctx, val)) for p, val in rows]
        _emit("\n".join(lines), args.out)
    return 0


# -- degree -------------------------------------------------------------


def _default_bracket(fn: str):
    if fn == "lnminuspsi":
        center = 1.0
    elif fn in ("phi", "negR1prime"):
        center = 2.0
    elif fn.startswith("R:"):
        n = int(fn.split(":")[1])
        center = float(n) if n <= 1 else 2.0 * (n - 1)
    else:  # negRprime:n
        n = int(fn.split(":")[1])
        if n <= 1:
            center = float(n + 1)
        else:
            center = 2.0 * n - 0.5
    return max(0.0, center - 1.0), center + 1.0


def _cmd_degree(args) -> int:
    families = builtin_families()
    if args.fn not in families:
        raise UsageError(
            "unknown family %r; expected one of %s" % (args.fn, ", ".join(sorted(families)))
        )
    ctx = PrecisionContext(args.digits)
    lo_default, hi_default = _default_bracket(args.fn)
    alpha_lo = args.alpha_lo if args.alpha_lo is not None else lo_default
    alpha_hi = args.alpha_hi if args.alpha_hi is not None else hi_default

    parts = args.grid.split(":")
    if len(parts) != 3:
        raise UsageError("--grid expects a:b:count, got %r" % args.grid)
    grid = GridSpec(parts[0], parts[1], int(parts[2]))

    bracket = degree_estimate(
        ctx,
        families[args.fn],
        alpha_lo,
        alpha_hi,
        resolution=args.resolution,
        order=args.order,
        grid=grid,
    )
    payload = {
        "config": {
            "alpha_hi": _fmt(ctx, ctx.mpf(alpha_hi)),
            "alpha_lo": _fmt(ctx, ctx.mpf(alpha_lo)),
            "digits": ctx.digits,
            "fn": args.fn,
            "grid": args.grid,
            "order": args.order,
            "resolution": _fmt(ctx, ctx.mpf(args.resolution)),
        },
        "result": {
            "failed_alpha": _fmt(ctx, bracket.failed_alpha),
            "first_deriv_bound": _fmt(ctx, bracket.first_deriv_bound),
            "order_used": bracket.order_used,
            "passed_alpha": _fmt(ctx, bracket.passed_alpha),
            "width": _fmt(ctx, bracket.width),
        },
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0


# -- verify -------------------------------------------------------------


def _record(ctx, name, anchor, max_dev, tol, passed, **extra):
    rec = {
        "name": name,
        "paper_anchor": anchor,
        "max_deviation": _fmt(ctx, max_dev),
        "tolerance": _fmt(ctx, tol),
        "pass": bool(passed),
    }
    rec.update(extra)
    return rec


def _suite_binet(ctx, quick, find_negative):
    ts = ("1", "10") if quick else ("0.5", "1", "2", "10", "100")
    dev = max(binet_check(ctx, ctx.mpf(t)) for t in ts)
    tol = ctx.mpf(10) ** (-(ctx.digits - 20))
    return [_record(ctx, "binet", _ANCHORS["binet"], dev, tol, dev <= tol, points=len(ts))]


def _suite_psi_integral(ctx, quick, find_negative):
    ts = ("1", "10") if quick else ("0.5", "1", "2", "10", "100")
    dev = max(psi_integral_check(ctx, ctx.mpf(t)) for t in ts)
    tol = ctx.mpf(10) ** (-(ctx.digits - 20))
    return [
        _record(ctx, "psi-integral", _ANCHORS["psi-integral"], dev, tol, dev <= tol, points=len(ts))
    ]


def _suite_bose(ctx, quick, find_negative):
    ks = (1, 2, 3) if quick else (1, 2, 3, 4, 5, 6)
    tol_q = ctx.mpf(10) ** (-(ctx.digits - 15))
    dev = ctx.mpf(0)
    for k in ks:
        exact = Fraction(bernoulli(2 * k), 4 * k)
        if k % 2 == 0:
            exact = -exact
        moment = bose_moment(ctx, 2 * k - 1, tol_q)
        dev = max(dev, abs(moment.value - ctx.mpf(exact)))
    tol = ctx.mpf(10) ** (-(ctx.digits - 20))
    return [_record(ctx, "bose", _ANCHORS["bose"], dev, tol, dev <= tol, moments=len(ks))]


def _suite_laplace_rep(ctx, quick, find_negative):
    combos = ((1, "10"),) if quick else ((1, "1"), (1, "10"), (2, "10"))
    tol = ctx.mpf(10) ** (-15)
    dev = max(verify_degree_representation(ctx, n, ctx.mpf(t), tol) for n, t in combos)
    return [
        _record(
            ctx,
            "laplace-rep",
            _ANCHORS["laplace-rep"],
            dev,
            tol,
            dev <= tol,
            cases=len(combos),
        )
    ]


def _suite_remark1(ctx, quick, find_negative):
    chain = remark1_chain(ctx, ctx.mpf("1e-6"))
    dev = max(abs(e) for e in chain.vanishing)
    tol = ctx.mpf(10) ** (-15)
    recs = [
        _record(ctx, "remark1-vanishing", _ANCHORS["remark1"], dev, tol, dev <= tol)
    ]
    count = 40 if quick else 100
    low = min(remark1_chain(ctx, v).expr5 for v in GridSpec(1e-3, 30.0, count).points(ctx))
    shortfall = -low if low < 0 else ctx.mpf(0)
    recs.append(
        _record(
            ctx,
            "remark1-positivity",
            _ANCHORS["remark1"],
            shortfall,
            0,
            low > 0,
            points=count,
        )
    )
    return recs


def _suite_remark2(ctx, quick, find_negative):
    ss = ("1", "5") if quick else ("0.5", "1", "5", "20")
    tol_q = ctx.mpf(10) ** (-25)
    low = min(sin_kernel_integral(ctx, 2, ctx.mpf(s), tol_q).value for s in ss)
    shortfall = -low if low < 0 else ctx.mpf(0)
    tol = ctx.mpf(10) ** (-20)
    recs = [
        _record(
            ctx,
            "remark2-nonnegative",
            _ANCHORS["remark2"],
            shortfall,
            tol,
            shortfall <= tol,
            points=len(ss),
        )
    ]
    if find_negative:
        found = None
        tol_scan = ctx.mpf(10) ** (-15)
        for s in range(1, 31):
            val = sin_kernel_integral(ctx, 4, ctx.mpf(s), tol_scan).value
            if val < -ctx.mpf(10) ** (-8):
                found = (s, val)
                break
        if found:
            recs.append(
                _record(
                    ctx,
                    "remark2-negative-case",
                    _ANCHORS["remark2"],
                    0,
                    0,
                    True,
                    s=str(found[0]),
                    value=_fmt(ctx, found[1]),
                )
            )
        else:
            recs.append(
                _record(
                    ctx,
                    "remark2-negative-case",
                    _ANCHORS["remark2"],
                    0,
                    0,
                    False,
                    note="no negative fourth-power moment located for s in 1..30",
                )
            )
    return recs


def _suite_remark3(ctx, quick, find_negative):
    ns = (1, 2) if quick else (1, 2, 3, 4)
    grid = GridSpec(1e-2, 1e2, 50 if quick else 200)
    recs = []
    for n in ns:
        rep = remark3_inequalities(ctx, n, grid)
        shortfall = ctx.mpf(0)
        for margin in rep.min_margin:
            if margin < 0 and -margin > shortfall:
                shortfall = -margin
        recs.append(
            _record(
                ctx,
                "remark3-n%d" % n,
                _ANCHORS["remark3"],
                shortfall,
                0,
                rep.all_hold,
                violations=len(rep.violations),
            )
        )
        if n == 1:
            exact_ok = rep.bound_exact == Fraction(1, 24)
            recs.append(
                _record(
                    ctx,
                    "remark3-exact-bound",
                    _ANCHORS["remark3"],
                    0 if exact_ok else 1,
                    0,
                    exact_ok,
                    bound=str(rep.bound_exact),
                )
            )
    return recs


def _suite_remark4(ctx, quick, find_negative):
    ns = (1,) if quick else (1, 2, 3)
    tol = ctx.mpf(10) ** (-6)
    recs = []
    for n in ns:
        limits = tail_limits(ctx, n)
        dev = max(e.deviation / (1 + abs(e.target_value)) for e in limits.entries)
        recs.append(
            _record(ctx, "remark4-n%d" % n, _ANCHORS["remark4"], dev, tol, dev <= tol)
        )
    return recs


_SUITE_FUNCS = {
    "binet": _suite_binet,
    "psi-integral": _suite_psi_integral,
    "bose": _suite_bose,
    "laplace-rep": _suite_laplace_rep,
    "remark1": _suite_remark1,
    "remark2": _suite_remark2,
    "remark3": _suite_remark3,
    "remark4": _suite_remark4,
}


def _run_suite(ctx, name, quick, find_negative):
    try:
        return _SUITE_FUNCS[name](ctx, quick, find_negative)
    except IntegrationError as exc:
        return [
            {
                "name": name,
                "paper_anchor": _ANCHORS[name],
                "max_deviation": "",
                "tolerance": "",
                "pass": False,
                "note": "integration budget exhausted: %s" % exc,
            }
        ]


def _cmd_verify(args) -> int:
    ctx = PrecisionContext(args.digits)
    suites = _SUITES if args.suite == "all" else (args.suite,)
    records = []
    for name in suites:
        records.extend(_run_suite(ctx, name, args.quick, args.find_negative))
    records.sort(key=lambda r: r["name"])
    payload = {
        "config": {
            "digits": ctx.digits,
            "find_negative": bool(args.find_negative),
            "quick": bool(args.quick),
            "suite": args.suite,
        },
        "results": records,
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0 if all(r["pass"] for r in records) else 1


# -- entry point --------------------------------------------------------


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=50, help="working precision (default 50)")
    common.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="eval output format; degree and verify always emit JSON",
    )
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="cmlab",
        description="remainder functions, exponential kernels and "
        "complete-monotonicity degree estimation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="tabulate a function")
    p_eval.add_argument(
        "--fn",
        required=True,
        help="lngamma | psi | polygamma:m | R:n | R1:n | R2:n | f:n | K:m | phi",
    )
    p_eval.add_argument("--t", default=None, help="single evaluation point")
    p_eval.add_argument("--grid", default=None, help="a:b:count log-spaced points")

    p_deg = sub.add_parser("degree", parents=[common], help="bracket a monotonicity degree")
    p_deg.add_argument(
        "--fn",
        required=True,
        help="lnminuspsi | phi | negR1prime | R:n | negRprime:n (n = 0..6)",
    )
    p_deg.add_argument("--alpha-lo", default=None, help="passing endpoint (default per family)")
    p_deg.add_argument("--alpha-hi", default=None, help="failing endpoint (default per family)")
    p_deg.add_argument("--resolution", default="0.05", help="bracket width target")
    p_deg.add_argument("--order", type=int, default=8, help="highest derivative order checked")
    p_deg.add_argument("--grid", default="1e-10:1e3:400", help="a:b:count evaluation grid")

    p_ver = sub.add_parser("verify", parents=[common], help="run identity suites")
    p_ver.add_argument("--suite", default="all", choices=_SUITES + ("all",))
    p_ver.add_argument("--quick", action="store_true", help="reduced case lists")
    p_ver.add_argument(
        "--find-negative",
        action="store_true",
        dest="find_negative",
        help="also scan the fourth-power sine moment for a negative value",
    )
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "degree":
            return _cmd_degree(args)
        return _cmd_verify(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except DomainError as exc:
        print("domain error: %s" % exc, file=sys.stderr)
        return 3
    except BracketError as exc:
        print("bracket error: %s" % exc, file=sys.stderr)
        return 4
    except IntegrationError as exc:
        print("integration failed: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
