"""Command-line front end.

    pro2 verify [--k K ...] [--allow-large]
    pro2 series --k K --kind KIND [--format csv|json]
    pro2 hdim   --k K --series KIND --subgroup NAME [--level I] [--format csv|json]
    pro2 oracle --k K

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 enumeration cap hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys

from .errors import CapacityError, UndefinedRatioError
from .group import GroupContext, mul
from .series import get_series, series_kind
from .spectra import NamedSubgroupSpec, build_named, hdim_ratio, spectrum_table, target
from .subgroups import whole_group, z_k
from .verify import run_suite
from .wreath import bfs_closure, project, relator_check, wreath_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
MIN_CAP = 1 << 10

SERIES_COLUMNS = ["i", "log2_order", "factor_rank", "closed_form_match"]
HDIM_COLUMNS = ["k", "series", "subgroup", "i", "log2_sub_index", "log2_group_index",
                "ratio_num", "ratio_den", "num", "den", "ratio", "target"]


class UsageError(Exception):
    pass


def _fmt_fraction(fr) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def _emit(k, series, rows, columns, fmt, out):
    if fmt == "json":
        json.dump({"k": k, "series": series, "rows": rows}, out, sort_keys=False)
        out.write("\n")
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: "" if row.get(c) is None else row[c] for c in columns})
    out.write(buf.getvalue())


def _context(k: int, allow_large: bool) -> GroupContext:
    if k < 2:
        raise UsageError(f"k must be >= 2, got {k}")
    if k > 3 and not allow_large:
        raise UsageError(f"k={k} needs --allow-large")
    return GroupContext(k)


def cmd_verify(args, out) -> int:
    ks = args.k or [2, 3]
    failed = 0
    rows = []
    for k in ks:
        ctx = _context(k, args.allow_large)
        for check in run_suite(ctx):
            failed += not check.passed
            rows.append({"k": k, "check": check.name, "passed": check.passed,
                         "detail": check.detail})
    if args.format == "json":
        json.dump({"k": ks, "series": None, "rows": rows}, out)
        out.write("\n")
    else:
        for r in rows:
            mark = "PASS" if r["passed"] else "FAIL"
            out.write(f"{mark} k={r['k']} {r['check']}: {r['detail']}\n")
        out.write(f"{len(rows) - failed}/{len(rows)} checks passed\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_series(args, out) -> int:
    ctx = _context(_single_k(args), args.allow_large)
    kind = series_kind(args.kind)
    table = get_series(ctx, kind)
    ranks = table.factor_ranks
    match = table.closed_form_match
    rows = []
    for j, (i, term) in enumerate(zip(table.indices(), table.terms)):
        if term.is_trivial():
            break
        rows.append({
            "i": i,
            "log2_order": term.log_order,
            "factor_rank": ranks[j] if j < len(ranks) else None,
            "closed_form_match": match[j] if j < len(match) else None,
        })
    _emit(ctx.k, kind, rows, SERIES_COLUMNS, args.format, out)
    return EXIT_OK


def cmd_hdim(args, out) -> int:
    ctx = _context(_single_k(args), args.allow_large)
    kind = series_kind(args.series)
    try:
        spec = NamedSubgroupSpec.parse(args.subgroup)
        K = build_named(ctx, spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.level is None:
        points = spectrum_table(ctx, kind, K)
    else:
        points = [hdim_ratio(ctx, kind, K, args.level)]
    goal = target(spec, kind)
    rows = []
    for p in points:
        rows.append({
            "k": ctx.k, "series": kind, "subgroup": str(spec), "i": p.level,
            "log2_sub_index": p.num, "log2_group_index": p.den,
            "ratio_num": p.value.numerator, "ratio_den": p.value.denominator,
            "num": p.num, "den": p.den, "ratio": _fmt_fraction(p.value),
            "target": _fmt_fraction(goal) if goal is not None else None,
        })
    _emit(ctx.k, kind, rows, HDIM_COLUMNS, args.format, out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    ctx = _context(_single_k(args), args.allow_large)
    results = []
    if ctx.k <= 3:
        closure = bfs_closure(ctx, cap=1 << 18)
        results.append(("BFS closure order", len(closure) == 1 << ctx.log_order,
                        f"{len(closure)} elements"))
        kernel = sum(1 for g in closure if project(g).is_identity())
        results.append(("projection kernel is Z_k", kernel == z_k(ctx).order, f"{kernel} elements"))
        image = {project(g) for g in closure}
        results.append(("projection onto W_k", len(image) == wreath_order(ctx.k),
                        f"{len(image)} of {wreath_order(ctx.k)}"))
    else:
        G = whole_group(ctx)
        results.append(("closure order", G.log_order == ctx.log_order, f"2^{G.log_order}"))
    rep = relator_check(ctx)
    ok = all(v != name.endswith("(not a relator)") for name, v in rep.items())
    results.append(("relators", ok, f"{len(rep) - 1} relators"))
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.samples):
        g, h = ctx.random_element(rng), ctx.random_element(rng)
        bad += project(mul(g, h)) != project(g) * project(h)
    results.append(("projection is a homomorphism", not bad, f"{args.samples} pairs, {bad} failures"))
    failed = 0
    for name, passed, detail in results:
        failed += not passed
        out.write(f"{'PASS' if passed else 'FAIL'} k={ctx.k} {name}: {detail}\n")
    return EXIT_FAIL if failed else EXIT_OK


def _single_k(args) -> int:
    if not args.k:
        return 2
    if len(args.k) != 1:
        raise UsageError("this command takes a single --k")
    return args.k[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pro2", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, action="append", help="level k (repeatable for verify)")
    common.add_argument("--cap", type=lambda s: int(s, 0), default=None,
                        help="enumeration cap (>= 1024); overrides PRO2_CAP")
    common.add_argument("--allow-large", action="store_true", help="permit k >= 4")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("verify", parents=[common], help="run the lemma suite")

    p = sub.add_parser("series", parents=[common], help="print a filtration series")
    p.add_argument("--kind", "--series", dest="kind", required=True)

    p = sub.add_parser("hdim", parents=[common], help="print finite-level ratios")
    p.add_argument("--series", "--kind", dest="series", required=True)
    p.add_argument("--subgroup", required=True, help="Z, Zk, H, G, trivial, K(m,n) or L(m,n)")
    p.add_argument("--level", type=int, default=None)

    p = sub.add_parser("oracle", parents=[common], help="brute-force cross-checks")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {"verify": cmd_verify, "series": cmd_series, "hdim": cmd_hdim, "oracle": cmd_oracle}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    saved = os.environ.get("PRO2_CAP")
    if args.cap is not None:
        if args.cap < MIN_CAP:
            print(f"pro2: --cap must be at least {MIN_CAP}", file=sys.stderr)
            return EXIT_USAGE
        os.environ["PRO2_CAP"] = str(args.cap)
    try:
        return COMMANDS[args.verb](args, out)
    except (UsageError, ValueError, IndexError, UndefinedRatioError) as exc:
        print(f"pro2: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"pro2: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    finally:
        if saved is None:
            os.environ.pop("PRO2_CAP", None)
        else:
            os.environ["PRO2_CAP"] = saved


if __name__ == "__main__":
    sys.exit(main())
