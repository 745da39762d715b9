"""Command-line entry point: counts, triangles, parity, growth, verification, export.

Exit codes: 0 when everything requested passed, 1 when a verification
failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import analysis, oracle
from .poly import catalan, gamma_expansion, is_real_rooted, is_symmetric, is_unimodal
from .w2 import build_w2_poly_table, build_w2_table, check_eq6, check_eq37, check_theorem7
from .w3 import CheckpointError, W3PolyTable, W3Table, build_w3_poly_table, build_w3_table

CACHE_ENV = "STACKSORT_CACHE"
SUITES = ("oracle", "gf", "gamma", "bounds", "roots", "all")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _cache_dir(args) -> str | None:
    if getattr(args, "no_cache", False):
        return None
    path = getattr(args, "cache", None) or os.environ.get(CACHE_ENV)
    if path:
        os.makedirs(path, exist_ok=True)
    return path


def _w3_counts_table(n: int, args) -> W3Table:
    cache = _cache_dir(args)
    ckpt = os.path.join(cache, "w3-counts.json") if cache else None
    return build_w3_table(n, method=getattr(args, "method", "fast"), checkpoint=ckpt)


def _w3_poly_table(n: int, args, track_peaks: bool = True) -> W3PolyTable:
    cache = _cache_dir(args)
    name = "w3-poly.json" if track_peaks else "w3-poly-y1.json"
    ckpt = os.path.join(cache, name) if cache else None
    return build_w3_poly_table(n, track_peaks=track_peaks, checkpoint=ckpt)


def counts(t: int, n: int, args) -> list[int]:
    if t == 1:
        return [catalan(k) for k in range(1, n + 1)]
    if t == 2:
        return build_w2_table(n).counts(n)
    return _w3_counts_table(n, args).counts(n)


def _emit_rows(header: list[str], rows: list[list], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([dict(zip(header, map(_jsonable, r))) for r in rows], out, indent=1)
        out.write("\n")
    elif fmt == "csv":
        wr = csv.writer(out, lineterminator="\n")
        wr.writerow(header)
        wr.writerows(rows)
    else:
        for r in rows:
            out.write(" ".join("-" if v is None else str(v) for v in r) + "\n")


def _jsonable(v):
    # numbers travel as decimal strings
    return v if v is None or isinstance(v, (bool, str)) else str(v)


# ---------------------------------------------------------------- commands

def cmd_count(args, out) -> int:
    vals = counts(args.t, args.n, args)
    if args.format == "plain":
        for v in vals:
            out.write(f"{v}\n")
    else:
        _emit_rows(["n", "count"], [[n, v] for n, v in enumerate(vals, start=1)], args.format, out)
    return 0


def cmd_triangle(args, out) -> int:
    if args.t == 2:
        tri = build_w2_poly_table(args.n).triangle(args.n)
    else:
        tri = _w3_poly_table(args.n, args).triangle(args.n)
    rows = [[args.n, k, p, c] for (k, p), c in sorted(tri.items())]
    _emit_rows(["n", "k", "p", "count"], rows, args.format, out)
    if args.marginals:
        by_k: dict[int, int] = {}
        for (k, _), c in tri.items():
            by_k[k] = by_k.get(k, 0) + c
        out.write("# k-marginal: " + " ".join(str(by_k.get(k, 0)) for k in range(max(args.n, 1))) + "\n")
        out.write(f"# total: {sum(tri.values())}\n")
    return 0


def cmd_parity(args, out) -> int:
    vals = counts(args.t, args.n, args)
    if args.bits:
        out.write(analysis.parity_bits(vals) + "\n")
        return 0
    recs = analysis.parity_table(vals)
    _emit_rows(["n", "eps", "g"], [[r.n, r.eps, r.g] for r in recs], args.format, out)
    if args.t == 3 and args.format == "plain":
        m = 2
        while m <= args.n:
            g1, g2, g3 = analysis.compare_g(m, vals)
            out.write(f"# m={m}: g1={g1} g2={g2} g3={g3}\n")
            m *= 2
    return 0


def cmd_growth(args, out) -> int:
    vals = counts(args.t, args.n, args)
    recs = analysis.growth_report(vals, digits=args.digits)
    rows = [[r.n, vals[r.n - 1], analysis._frac(r.ratio), analysis._frac(r.root_lo), analysis._frac(r.root_hi),
             "" if r.ratio is None else f"{float(r.ratio):.6f}"]
            for r in recs]
    _emit_rows(["n", "count", "ratio", "root_lo", "root_hi", "ratio_estimate"], rows, args.format, out)
    if args.format == "plain":
        out.write(f"# supermultiplicative: {analysis.check_supermultiplicative(vals)}\n")
        lc = analysis.check_log_convex_prefix(vals)
        out.write(f"# log-convex prefix: {'yes' if lc is None else f'violated at n={lc}'}\n")
    return 0


# ---------------------------------------------------------------- verification

@dataclass
class Report:
    seed: int
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _verify_oracle(args, rep: Report) -> None:
    n = min(args.n or 8, args.cap)
    w3 = build_w3_table(n).counts(n)
    for k in range(1, n + 1):
        rep.add(f"oracle.w3[{k}]", w3[k - 1] == oracle.brute_w_t(k, 3, args.cap), str(w3[k - 1]))
    tn = min(n, 8)
    p2, p3 = build_w2_poly_table(tn), build_w3_poly_table(tn)
    for k in range(1, tn + 1):
        rep.add(f"oracle.triangle2[{k}]", p2.triangle(k) == oracle.brute_w_t_triangle(k, 2, args.cap))
        rep.add(f"oracle.triangle3[{k}]", p3.triangle(k) == oracle.brute_w_t_triangle(k, 3, args.cap))


def _verify_gf(args, rep: Report) -> None:
    for r in (check_eq6(args.order_w, args.order_z), check_eq37(args.order_w, args.order_z),
              check_theorem7(args.order_t7)):
        detail = f"orders w<={r.order_w} z<={r.order_z}"
        if not r.passed:
            detail += f" nonzero at {r.failures[:5]}"
        rep.add(f"gf.{r.identity}", r.passed, detail)


def _verify_gamma(args, rep: Report) -> None:
    n = args.n or 7
    subsets = oracle.random_subsets(n, args.samples, args.seed)
    bad = [i for i, s in enumerate(subsets) if not oracle.verify_gamma_identity(s, args.cap)]
    rep.add(f"gamma.identity[n={n}]", not bad, f"{args.samples} subsets, seed {args.seed}"
            + (f", failing {bad[:5]}" if bad else ""))


def _verify_bounds(args, rep: Report) -> None:
    n = min(args.n or 8, args.cap)
    for t in (1, 2, 3):
        series = analysis.kremer_coeffs(t, n)
        brute = [oracle.brute_avoiders(k, oracle.gamma_t_patterns(t))[0] for k in range(t, n + 1)]
        rep.add(f"bounds.kremer[t={t}]", series == brute, " ".join(map(str, series)))
        rep.add(f"bounds.containment[t={t}]",
                all(analysis.verify_gamma_t_containment(t, k, args.cap) for k in range(1, n + 1)), f"n<={n}")
    depth = max(n, 20)
    w3 = build_w3_table(depth).counts(depth)
    rep.add("bounds.supermultiplicative", analysis.check_supermultiplicative(w3), f"n<={depth}")
    rep.add("bounds.log_convex_prefix", analysis.check_log_convex_prefix(w3) is None, f"n<={depth}")
    rep.add("bounds.growth", all(r.below_binom and r.below_power for r in analysis.check_conj3(w3, 3)), f"n<={depth}")


def _verify_roots(args, rep: Report) -> None:
    n = args.n or 15
    table = build_w3_poly_table(n, track_peaks=False)
    for k in range(1, n + 1):
        coeffs = table.descent_coeffs(k)
        ok = is_real_rooted(coeffs) and is_symmetric(coeffs, k - 1) and is_unimodal(coeffs)
        gamma = gamma_expansion(coeffs, k - 1)
        rep.add(f"roots.w3[{k}]", ok and all(g >= 0 for g in gamma), "real-rooted, symmetric, unimodal")


_SUITE_FUNCS: dict[str, Callable] = {
    "oracle": _verify_oracle, "gf": _verify_gf, "gamma": _verify_gamma,
    "bounds": _verify_bounds, "roots": _verify_roots,
}


def cmd_verify(args, out) -> int:
    if args.n is not None and args.n > args.cap and args.suite in ("oracle", "gamma", "bounds"):
        raise UsageError(f"--n {args.n} exceeds --cap {args.cap}")
    rep = Report(args.seed)
    names = list(_SUITE_FUNCS) if args.suite == "all" else [args.suite]
    for name in names:
        _SUITE_FUNCS[name](args, rep)
    if args.format == "json":
        json.dump({"seed": args.seed, "passed": rep.passed,
                   "checks": [{"check": c, "passed": ok, "detail": d} for c, ok, d in rep.checks]}, out, indent=1)
        out.write("\n")
    elif args.format == "csv":
        wr = csv.writer(out, lineterminator="\n")
        wr.writerow(["check", "passed", "detail"])
        wr.writerows(rep.checks)
    else:
        out.write(f"# seed {args.seed}\n")
        for c, ok, d in rep.checks:
            out.write(f"{'PASS' if ok else 'FAIL'} {c} {d}\n".rstrip() + "\n")
        out.write(f"# {sum(ok for _, ok, _ in rep.checks)}/{len(rep.checks)} passed\n")
    return 0 if rep.passed else 1


# ---------------------------------------------------------------- export / resume

def cmd_export(args, out) -> int:
    n = args.n
    if args.what == "w2":
        body = analysis.dumps_tables(w2=build_w2_table(n))
    elif args.what == "w2poly":
        body = analysis.dumps_tables(w2=build_w2_poly_table(n))
    elif args.what == "w3":
        body = analysis.dumps_tables(w3=_w3_counts_table(n, args))
    elif args.what == "w3poly":
        body = analysis.dumps_tables(w3=_w3_poly_table(n, args))
    elif args.what == "triangle":
        table = _w3_poly_table(n, args)
        body = analysis.triangle_csv((k, table.triangle(k)) for k in range(1, n + 1))
    else:
        w3 = _w3_counts_table(n, args)
        vals = w3.counts(n)
        body = analysis.dumps_tables(w2=build_w2_table(n), w3=w3,
                                     parity=analysis.parity_table(vals), growth=analysis.growth_report(vals))
    if args.out in (None, "-"):
        out.write(body)
    else:
        with open(args.out, "w") as fh:
            fh.write(body)
    return 0


def cmd_resume(args, out) -> int:
    if not os.path.exists(args.checkpoint):
        raise UsageError(f"no checkpoint at {args.checkpoint}")
    cls = W3PolyTable if args.poly else W3Table
    table = cls.load(args.checkpoint)
    start = table.depth
    table.extend(args.n, lambda t: t.save(args.checkpoint))
    out.write(f"# resumed at depth {start}, now {table.depth}\n")
    if args.poly:
        for k in range(1, args.n + 1):
            out.write(f"{table.w3_poly(k).total()}\n")
    else:
        for v in table.counts(args.n):
            out.write(f"{v}\n")
    return 0


# ---------------------------------------------------------------- parser

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "csv", "json"), default="plain", help="output format")
    common.add_argument("--threads", type=_positive, default=None,
                        help="threads for brute-force enumeration (never changes results)")
    cache = common.add_mutually_exclusive_group()
    cache.add_argument("--cache", metavar="DIR", default=None,
                       help=f"checkpoint directory for W_3 tables (default: ${CACHE_ENV} if set)")
    cache.add_argument("--no-cache", action="store_true", help=f"ignore ${CACHE_ENV}")

    ap = argparse.ArgumentParser(prog="stacksort", description="Exact counts of t-stack-sortable permutations.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="print W_t(1..n)")
    p.add_argument("--t", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--method", choices=("fast", "naive"), default="fast", help="W_3 fill (t = 3 only)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("triangle", parents=[common], help="print W_t(n, k, p) rows")
    p.add_argument("--t", type=int, choices=(2, 3), required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--marginals", action="store_true", help="also print the k-marginal and total")
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("parity", parents=[common], help="parities of W_t(1..n)")
    p.add_argument("--t", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--bits", action="store_true", help="print a bitstring, one character per n")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("growth", parents=[common], help="ratios and n-th root intervals of W_t(n)")
    p.add_argument("--t", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--digits", type=_positive, default=6, help="decimal digits of the n-th root interval")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n", type=_positive, default=None, help="size parameter (suite-specific default)")
    p.add_argument("--samples", type=_positive, default=100, help="random subsets for the gamma suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=_positive, default=oracle.DEFAULT_CAP, help="largest length to enumerate")
    p.add_argument("--order-w", type=int, default=10)
    p.add_argument("--order-z", type=int, default=10)
    p.add_argument("--order-t7", type=int, default=8, help="w-order for the refined W_2 identity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="write tables (checksummed JSON) or triangle CSV")
    p.add_argument("what", choices=("w2", "w2poly", "w3", "w3poly", "triangle", "bundle"))
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("resume", parents=[common], help="deepen a W_3 checkpoint file")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--poly", action="store_true", help="the checkpoint holds a polynomial table")
    p.set_defaults(func=cmd_resume)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads:
        from . import _kernels
        _kernels.set_threads(args.threads)
    try:
        return args.func(args, out)
    except (UsageError, CheckpointError, analysis.ChecksumError, analysis.FormatError,
            oracle.OracleCapError) as exc:
        print(f"stacksort: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
