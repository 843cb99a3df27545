"""Command-line workbench: ``qplab <command> ...``.

Exit codes: 0 success / verified, 1 violation or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

from . import verify
from .asymptotics import almkvist_hypothesis, almkvist_main_term
from .cache import NoCache, SeriesCache
from .inequalities import (SCAN_KINDS, _scan_span, expression_value, first_admissible,
                           inequality_profile, limit_profile, threshold_scan)
from .partitions import Multiset, gcd_condition
from .quasipoly import fmt_rational, recover

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _cache(args):
    if args.no_cache:
        return NoCache()
    return SeriesCache(args.cache_dir)


def _multiset(args) -> Multiset:
    if not args.multiset:
        raise UsageError("this command needs a multiset (-A 1,2,3)")
    return Multiset.parse(args.multiset)


def _approx(x) -> str:
    return f"{float(x):.6g}" if x is not None else ""


def _write(out, fmt: str, header, rows, payload=None, pretty=None):
    """Emit a table. ``payload`` overrides the JSON body, ``pretty`` the text view."""
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    elif fmt == "json":
        body = payload if payload is not None else [dict(zip(header, r)) for r in rows]
        json.dump(body, out, indent=1)
        out.write("\n")
    else:
        out.write(pretty if pretty is not None else _pretty_table(header, rows))


def _pretty_table(header, rows) -> str:
    cols = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(str(r[i])) for r in cols) for i in range(len(header))]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(r, widths)) for r in cols]
    return "\n".join(lines) + "\n"


def _json_rational(x):
    return None if x is None else fmt_rational(x)


# ---------------------------------------------------------------------------


def cmd_series(args, out):
    A = _multiset(args)
    if args.limit is None:
        raise UsageError("series needs -N")
    vals = _cache(args).get(A, args.limit)
    rows = list(enumerate(vals))
    _write(out, args.format, ("n", "value"), rows,
           payload={"multiset": list(A.parts), "values": vals})
    return EXIT_OK


def cmd_recover(args, out):
    A = _multiset(args)
    M, deg = A.lcm, A.k - 1
    N = args.limit if args.limit is not None else M * (deg + 2) - 1
    f = recover(_cache(args).get(A, N), M, deg)
    header = ("class",) + tuple(f"c{j}" for j in range(deg + 1))
    rows = [(r,) + tuple(fmt_rational(p[j]) for j in range(deg + 1)) for r, p in enumerate(f.pieces)]
    table = f.coefficient_table()
    lines = [f"p_A for A = {A}: quasi-polynomial of period {M}, degree {f.degree}"]
    for j in range(deg, -1, -1):
        if table.is_constant(j):
            lines.append(f"  n^{j}: constant {table.rows[j][0]}")
        else:
            lines.append(f"  n^{j}: {len(set(table.rows[j]))} distinct values across classes")
    _write(out, args.format, header, rows, payload=f.to_json(), pretty="\n".join(lines) + "\n")
    return EXIT_OK


def _hypothesis_note(A: Multiset, kind: str, d: int) -> str:
    size = A.k - d if kind.startswith("turan") else A.k - 2 * d
    if size < 1:
        return f"gcd criterion not applicable (k={A.k} too small for order {d})"
    ok = gcd_condition(A, size)
    return (f"gcd criterion over {size}-element multisubsets: "
            f"{'holds, eventual validity guaranteed' if ok else 'fails, no guarantee'}")


def cmd_profile(args, out):
    A = _multiset(args)
    kind = args.kind
    if kind not in ("turan2", "turan3", "turan4", "laguerre"):
        raise UsageError("profile supports --kind turan2, turan3, turan4, laguerre")
    if kind == "laguerre" and args.order is None:
        raise UsageError("--kind laguerre needs -d")
    M, deg = A.lcm, A.k - 1
    f = recover(_cache(args).get(A, M * (deg + 2) - 1), M, deg)
    prof = inequality_profile(f, kind, args.order, reduced=not args.raw, jobs=args.jobs)
    order = prof.order
    if args.format == "csv":
        rows = prof.csv_rows()
        _write(out, "csv", rows[0], rows[1:])
        return EXIT_OK
    payload = prof.to_json()
    payload["multiset"] = list(A.parts)
    payload["hypothesis"] = _hypothesis_note(A, kind, order)
    groups = {}
    for r, (d, c) in enumerate(zip(prof.degrees, prof.leading)):
        groups.setdefault((d, c), []).append(r)
    lines = [f"{prof.kind} (order {order}{', raw' if args.raw and kind == 'laguerre' else ''}) "
             f"for A = {A}, period {M}", f"  {payload['hypothesis']}",
             f"  minimum leading term: {prof.min_leading} n^{prof.min_degree} "
             f"(approx {_approx(prof.min_leading)}) on {len(prof.argmin_classes)} classes"]
    for (d, c), classes in sorted(groups.items(), key=lambda kv: -len(kv[1])):
        shown = ", ".join(map(str, classes[:12])) + (", ..." if len(classes) > 12 else "")
        term = "identically zero" if d is None else f"{c} n^{d}  (approx {_approx(c)})"
        lines.append(f"  {len(classes):5d} classes  {term}  [{shown}]")
    _write(out, args.format, None, None, payload=payload, pretty="\n".join(lines) + "\n")
    return EXIT_OK


def _scan_values(args, A, kind, d, limit):
    _, hi = _scan_span(kind, d)
    return _cache(args).get(A, limit + hi)


def cmd_scan(args, out):
    A = _multiset(args)
    if args.limit is None:
        raise UsageError("scan needs -N")
    kind, d = args.kind, args.order
    if kind in ("laguerre", "jensen", "rlogconcave") and d is None:
        raise UsageError(f"--kind {kind} needs -d")
    res = threshold_scan(_scan_values(args, A, kind, d, args.limit), kind, d, args.limit,
                         jobs=args.jobs)
    late = [n for n in res.violations if 2 * n > res.limit]
    persistent = bool(late)
    M = A.lcm
    late_classes = sorted({n % M for n in late})
    payload = {
        "multiset": list(A.parts), "kind": kind, "order": res.order,
        "first_checked": res.first, "limit": res.limit,
        "violations": len(res.violations), "last_violation": res.last_violation,
        "holds_from": res.holds_from, "persistent": persistent,
        "late_violation_classes": late_classes, "modulus": M,
        "note": f"empirical up to n = {res.limit}",
    }
    rows = [(k, json.dumps(v) if isinstance(v, list) else v) for k, v in payload.items()]
    if persistent:
        verdict = (f"violations persist to the horizon: {len(late)} in ({res.limit // 2}, {res.limit}], "
                   f"classes mod {M}: {late_classes[:20]}{' ...' if len(late_classes) > 20 else ''}")
    elif res.last_violation is None:
        verdict = f"no violation for {res.first} <= n <= {res.limit}"
    else:
        verdict = (f"last violation at n = {res.last_violation}; holds for "
                   f"{res.holds_from} <= n <= {res.limit}")
    pretty = (f"{kind}{'' if d is None else f' d={d}'} scan of p_A, A = {A}\n  {verdict}\n"
              f"  ({len(res.violations)} violations in total; empirical up to the horizon)\n")
    _write(out, args.format, ("field", "value"), rows, payload=payload, pretty=pretty)
    return EXIT_VIOLATION if persistent else EXIT_OK


def cmd_values(args, out):
    A = _multiset(args)
    if args.limit is None:
        raise UsageError("values needs -N")
    kind, d = args.kind, args.order
    if kind in ("laguerre", "jensen", "rlogconcave") and d is None:
        raise UsageError(f"--kind {kind} needs -d")
    vals = _scan_values(args, A, kind, d, args.limit)
    start = max(1, first_admissible(kind, d))
    rows = [(n, expression_value(vals, n, kind, d, reduced=not args.raw))
            for n in range(start, args.limit + 1)]
    if args.format == "pretty":
        rows = [(n, v, _approx(v)) for n, v in rows]
        _write(out, "pretty", ("n", "value", "approx"), rows)
    else:
        _write(out, args.format, ("n", "value"), rows)
    return EXIT_OK


def _parse_xs(text: str) -> list:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad x list {text!r}: {exc}") from None


def cmd_limit(args, out):
    A = _multiset(args)
    if args.s is None or args.n is None:
        raise UsageError("limit needs -s and -n")
    xs = _parse_xs(args.x)
    vals = _cache(args).get(A, args.n + args.s)
    lp = limit_profile(A, args.s, args.n, xs, vals)
    rows = [(fmt_rational(x), fmt_rational(v), fmt_rational(t), fmt_rational(dv))
            for x, v, t, dv in zip(lp.xs, lp.values, lp.targets, lp.deviations)]
    header = ("x", "value", "target", "deviation")
    if args.format == "pretty":
        prow = [(str(x), _approx(v), _approx(t), _approx(dv))
                for x, v, t, dv in zip(lp.xs, lp.values, lp.targets, lp.deviations)]
        text = (f"n^s/p_A(n) J^(s,n)(x/n - 1) for A = {A}, s = {args.s}, n = {args.n}\n"
                f"target (-1)^s s! L_s^(l-s)(x) = {lp.target}   (decimals approximate)\n"
                + _pretty_table(header, prow))
        out.write(text)
    else:
        _write(out, args.format, header, rows)
    return EXIT_OK


def cmd_almkvist(args, out):
    A = _multiset(args)
    if args.j is None:
        raise UsageError("almkvist needs -j")
    holds = almkvist_hypothesis(A, args.j)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        poly = almkvist_main_term(A, args.j)
    note = ("gcd hypothesis holds" if holds else
            "gcd hypothesis FAILS: the O(n^(j-2)) error bound is void")
    rows = [(j, fmt_rational(poly[j])) for j in range(poly.degree, -1, -1)]
    payload = {"multiset": list(A.parts), "j": args.j, "hypothesis": holds,
               "coefficients": [fmt_rational(c) for c in poly.coeffs]}
    pretty = f"main term for A = {A}, j = {args.j}: {poly}\n  {note}\n"
    _write(out, args.format, ("power", "coefficient"), rows, payload=payload, pretty=pretty)
    return EXIT_OK


def cmd_verify_paper(args, out):
    if args.list:
        for name in verify.CHECKS:
            out.write(name + "\n")
        return EXIT_OK
    cache = None if args.no_cache else SeriesCache(args.cache_dir)
    try:
        ok = verify.run(only=args.only, jobs=args.jobs, cache=cache,
                        out=lambda line: (out.write(line + "\n"), out.flush()))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-A", "--multiset", help="parts, e.g. 1,1,1,1,300 or [1,2,3]")
    common.add_argument("-d", "--order", type=int, help="order d of the inequality")
    common.add_argument("-N", "--limit", type=int, help="largest n")
    common.add_argument("--kind", choices=SCAN_KINDS, default="turan2")
    common.add_argument("--format", choices=("csv", "json", "pretty"), default="pretty")
    common.add_argument("--cache-dir", help="series cache directory "
                        "(default: $QPLAB_CACHE_DIR or ~/.cache/qplab)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--raw", action="store_true",
                        help="Laguerre: use the raw sum instead of the halved form")

    parser = argparse.ArgumentParser(prog="qplab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("series", parents=[common], help="p_A(0..N)").set_defaults(fn=cmd_series)
    sub.add_parser("recover", parents=[common],
                   help="p_A as a quasi-polynomial").set_defaults(fn=cmd_recover)
    sub.add_parser("profile", parents=[common],
                   help="per-class leading terms of an inequality expression").set_defaults(fn=cmd_profile)
    sub.add_parser("scan", parents=[common],
                   help="exact sign scan of an inequality up to N").set_defaults(fn=cmd_scan)
    sub.add_parser("values", parents=[common],
                   help="(n, expression value) table for plotting").set_defaults(fn=cmd_values)
    p = sub.add_parser("limit", parents=[common], help="renormalised Jensen polynomial vs its limit")
    p.add_argument("-s", type=int, help="Jensen degree")
    p.add_argument("-n", type=int, help="shift n")
    p.add_argument("--x", default="1/2,1,2", help="comma-separated rationals")
    p.set_defaults(fn=cmd_limit)
    p = sub.add_parser("almkvist", parents=[common], help="main-term polynomial of p_A")
    p.add_argument("-j", type=int)
    p.set_defaults(fn=cmd_almkvist)
    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction suite")
    p.add_argument("--only", action="append", help="run only this check (repeatable)")
    p.add_argument("--list", action="store_true", help="list check names")
    p.set_defaults(fn=cmd_verify_paper)
    return parser


def main(argv=None, out=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.jobs < 1 or (args.limit is not None and args.limit < 0) or \
            (args.order is not None and args.order < 0):
        print("qplab: error: --jobs must be >= 1, -N and -d must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args, out)
    except (UsageError, ValueError) as exc:
        print(f"qplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
