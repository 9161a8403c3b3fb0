"""Command-line front end.

Exit status: 0 on success, 1 when a check or scan is inconclusive (or a
self-test disagrees), 2 on usage errors.  Output is a pure function of
the arguments; ``--threads`` only changes wall time.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

import mpmath
from mpmath import mp

from . import ceresa, specfun
from .ceresa import CeresaResult, RowFailure
from .specfun import QuadratureSpec


def _default_digits() -> int:
    env = os.environ.get("CERESA_DIGITS")
    if env:
        try:
            return max(10, int(env))
        except ValueError:
            pass
    return 30


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fermatvol",
        description="Error-bounded Ceresa-cycle invariants of Fermat curves")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None,
                        help="decimal accuracy target (default 30, env CERESA_DIGITS)")
    common.add_argument("--format", choices=("csv", "json", "text"), default="text")
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for independent rows")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="fractional parts for a degree range")
    t.add_argument("--n-min", type=int, default=4)
    t.add_argument("--n-max", type=int, default=100, help="exclusive upper bound")
    t.add_argument("--k", type=int, default=1)

    v = sub.add_parser("value", parents=[common], help="single invariant value")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--k", type=int, default=1)

    c = sub.add_parser("check", parents=[common], help="non-integrality verdict")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, default=1)

    s = sub.add_parser("scan", parents=[common], help="multiples scan m*f for m <= m-max")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--m-max", type=int, required=True)

    kq = sub.add_parser("klein", parents=[common], help="Klein-quartic triple value at degree 7")
    kq.add_argument("--k", type=int, default=13)

    d = sub.add_parser("dixon-test", parents=[common],
                       help="ten-way closed-form consistency self-test")
    d.add_argument("--trials", type=int, default=50)
    d.add_argument("--seed", type=int, default=20100301)

    o = sub.add_parser("oracle-test", parents=[common],
                       help="quadrature cross-check of the arc integral closed form")
    o.add_argument("--n", type=int, default=5)
    o.add_argument("--tolerance", type=float, default=1e-8)
    return ap


def _emit_result(res: CeresaResult, fmt: str, out) -> None:
    if fmt == "json":
        print(res.to_json(), file=out)
    elif fmt == "csv":
        print("n,k,frac,err,verdict", file=out)
        print(res.csv_row(), file=out)
    else:
        print(f"N={res.n} k={res.k}  frac={res.frac_6digits()}  "
              f"err<={mpmath.nstr(res.err, 3)}  verdict={res.verdict}", file=out)


def cmd_table(args, digits, out) -> int:
    rows = ceresa.table1(range(args.n_min, args.n_max), args.k, digits,
                         threads=max(1, args.threads))
    status = 0
    if args.format == "csv":
        print("n,k,frac,err,verdict", file=out)
    elif args.format == "text":
        print(f"N    f(N,{args.k}) mod 1", file=out)
    for row in rows:
        if isinstance(row, RowFailure):
            print(f"row N={row.n}: FAILED {row.message}", file=sys.stderr)
            status = 1
            continue
        if args.format == "csv":
            print(row.csv_row(), file=out)
        elif args.format == "json":
            print(row.to_json(), file=out)
        else:
            print(f"{row.n:<4d} {row.frac_6digits()}", file=out)
        if row.verdict != "non-integral":
            status = 1
    return status


def cmd_value(args, digits, out) -> int:
    res = ceresa.f_value(args.n, args.k, digits)
    _emit_result(res, args.format, out)
    return 0


def cmd_check(args, digits, out) -> int:
    res = ceresa.nonintegrality_check(args.n, args.k, digits)
    _emit_result(res, args.format, out)
    return 0 if res.verdict == "non-integral" else 1


def cmd_scan(args, digits, out) -> int:
    res = ceresa.multiples_scan(args.n, args.k, args.m_max, digits)
    if args.format == "json":
        print(res.to_json(), file=out)
    else:
        state = "all verified" if res.all_verified else \
            f"first inconclusive at m={res.first_inconclusive}"
        print(f"N={res.n} k={res.k} m<={res.m_max}: verified up to "
              f"{res.verified_up_to} ({state})", file=out)
    return 0 if res.all_verified else 1


def cmd_klein(args, digits, out) -> int:
    res = ceresa.klein_value(args.k, digits)
    _emit_result(res, args.format, out)
    return 0 if res.verdict == "non-integral" else 1


def _random_quadruple(rng: random.Random) -> tuple:
    def q():
        den = rng.randint(5, 40)
        return Fraction(rng.randint(1, den - 1), den)
    return q(), q(), q(), q()


def cmd_dixon_test(args, digits, out) -> int:
    rng = random.Random(args.seed)
    digits = min(digits, 25)
    worst = mp.mpf(0)
    bad = 0
    for trial in range(args.trials):
        quad = _random_quadruple(rng)
        members = specfun.dixon_family(*quad, digits=digits)
        live = [m for m in members if not m.skipped]
        ok = True
        for i in range(len(live)):
            for j in range(i + 1, len(live)):
                a, b = live[i].value, live[j].value
                gap = abs(a.value - b.value)
                worst = max(worst, gap)
                if not a.agrees_with(b):
                    ok = False
        n_skipped = len(members) - len(live)
        print(f"trial {trial:3d} params={tuple(str(x) for x in quad)} "
              f"live={len(live)} skipped={n_skipped} {'ok' if ok else 'DISAGREE'}",
              file=out)
        if not ok:
            bad += 1
    print(f"worst pairwise gap: {mpmath.nstr(worst, 3)}; "
          f"{args.trials - bad}/{args.trials} trials consistent", file=out)
    return 0 if bad == 0 else 1


def cmd_oracle_test(args, digits, out) -> int:
    from .fermat import FermatCurve, delta_iterated_integral, index_set
    curve = FermatCurve(args.n)
    idxs = index_set(args.n)
    spec = QuadratureSpec(digits=12)
    worst = 0.0
    bad = 0
    total = 0
    for i1 in idxs:
        for i2 in idxs:
            total += 1
            closed = delta_iterated_integral(curve, i1, i2, max(20, digits))
            quad = specfun.euler_double_integral(i1.alpha, i1.beta, i2.alpha, i2.beta, spec)
            b1 = specfun.gamma_quotient([i1.alpha, i1.beta], [i1.alpha + i1.beta], 25)
            b2 = specfun.gamma_quotient([i2.alpha, i2.beta], [i2.alpha + i2.beta], 25)
            normalized = closed * b1 * b2
            gap = abs(float(normalized.value - quad.value))
            worst = max(worst, gap)
            if gap > args.tolerance:
                bad += 1
                print(f"pair ({i1.a},{i1.b})x({i2.a},{i2.b}): gap {gap:.3g}",
                      file=sys.stderr)
    print(f"{total} pairs at N={args.n}: worst |closed - quadrature| = {worst:.3g}",
          file=out)
    return 0 if bad == 0 else 1


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    digits = args.digits if args.digits is not None else _default_digits()
    if digits < 10:
        ap.error("--digits must be at least 10")
    out = sys.stdout
    dispatch = {
        "table": cmd_table,
        "value": cmd_value,
        "check": cmd_check,
        "scan": cmd_scan,
        "klein": cmd_klein,
        "dixon-test": cmd_dixon_test,
        "oracle-test": cmd_oracle_test,
    }
    return dispatch[args.command](args, digits, out)


if __name__ == "__main__":
    sys.exit(main())
