"""Command-line front end (``cbt`` / ``python -m cbt``).

Exit codes: 0 success or PASS, 1 usage error, 2 verification FAIL,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time
from typing import Sequence

from .cache import CacheFormatError, GcbCache, decode_vector, encode_vector
from .canonical import Session, validate_gcb
from .fock import FockVector
from .kl import KLSession, compare_with_gcb, describe_mismatch, n_poly
from .laurent import ONE
from .partition import (
    Context,
    Partition,
    dominance_leq,
    format_partition,
    is_l_regular,
    l_regular_partitions,
    orbit_members,
    parse_partition,
)
from .recursion import AlgorithmError
from .verify import run_selftest

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3

ALGOS = ("llt", "fast", "soergel")
CSV_HEADER = ("algo", "k", "l", "mu", "seconds", "n_count")

# rows reproduced from the benchmark table: (k, l, mu, algorithms run)
SUITES = {
    "table1": [
        (4, 5, (20, 10, 0, 0), ALGOS),
        (4, 5, (40, 20, 0, 0), ALGOS),
        (5, 6, (36, 24, 12, 0, 0), ALGOS),
        # llt and soergel are far too slow for this row
        (5, 6, (72, 48, 24, 0, 0), ("fast",)),
    ],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- parsing helpers --------------------------------------------------------


def _context(args) -> Context:
    if args.k is None or args.l is None:
        raise UsageError("--k and --l are required")
    try:
        return Context(args.k, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _mu(args, ctx: Context, regular: bool = True) -> Partition:
    if args.mu is None:
        raise UsageError("--mu is required")
    try:
        mu = parse_partition(args.mu)
    except ValueError as exc:
        raise UsageError(f"cannot parse --mu {args.mu!r}: {exc}") from None
    if len(mu) > ctx.k:
        raise UsageError(f"mu has more than k={ctx.k} rows")
    if regular and not is_l_regular(mu, ctx.l):
        raise UsageError(f"mu is not l-regular (l={ctx.l}): {format_partition(mu)}")
    return mu


def _cache(args) -> GcbCache | None:
    path = args.cache or os.environ.get("CBT_CACHE")
    if not path:
        return None
    try:
        return GcbCache(path)
    except CacheFormatError as exc:
        raise UsageError(str(exc)) from None


def soergel_vector(mu: Partition, kl: KLSession) -> FockVector:
    """G~(mu) assembled from affine KL polynomials."""
    ctx = kl.ctx
    out = {}
    for lam in orbit_members(mu, ctx.k, ctx.l):
        if dominance_leq(lam, mu):
            p = n_poly(lam, mu, kl)
            if p:
                out[lam] = p
    return FockVector(ctx, out)


def compute(mu: Partition, ctx: Context, algo: str, cache=None) -> tuple[FockVector, int]:
    """``(G~(mu), n_count)`` with a fresh session of the given algorithm."""
    if algo == "soergel":
        kl = KLSession(ctx)
        return soergel_vector(mu, kl), kl.computed_count
    s = Session(ctx, algo, cache=cache)
    return s.gcb(mu), s.computed_count


# -- rendering ---------------------------------------------------------------


def render_gcb_json(ctx: Context, mu, algo: str, vec: FockVector) -> str:
    obj = {"k": ctx.k, "l": ctx.l, "mu": list(Partition(mu)), "algo": algo, "g": encode_vector(vec)}
    return json.dumps(obj)


def parse_gcb_json(text: str) -> tuple[Context, Partition, str, FockVector]:
    obj = json.loads(text)
    ctx = Context(obj["k"], obj["l"])
    return ctx, Partition(obj["mu"]), obj["algo"], decode_vector(ctx, obj["g"])


def _write_csv(rows, header, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


# -- commands ----------------------------------------------------------------


def cmd_gcb(args, out) -> int:
    ctx = _context(args)
    mu = _mu(args, ctx)
    vec, _ = compute(mu, ctx, args.algo, cache=_cache(args))
    if args.format == "json":
        print(render_gcb_json(ctx, mu, args.algo, vec), file=out)
    elif args.format == "csv":
        _write_csv([(format_partition(lam), str(p)) for lam, p in vec.sorted_items()], ("la", "d"), out)
    else:
        print(vec, file=out)
    return EXIT_OK


def _compare_one(mu, llt: Session, fast: Session, kl: KLSession, fault: bool) -> list[str]:
    a = llt.gcb(mu)
    b = fast.gcb(mu)
    if fault:
        # test hook: perturb the lowest coefficient of the fast result
        lam, p = b.sorted_items()[-1]
        entries = b.entries
        entries[lam] = p + ONE
        b = FockVector(b.ctx, entries)
    problems = []
    for lam in sorted(set(a) | set(b), reverse=True):
        if a.coeff(lam) != b.coeff(lam):
            problems.append(f"mu={format_partition(mu)} la={format_partition(lam)}: "
                            f"llt={a.coeff(lam)} fast={b.coeff(lam)}")
    problems += [f"mu={format_partition(mu)} {describe_mismatch(r)}" for r in compare_with_gcb(mu, llt, kl)]
    return problems


def cmd_compare(args, out) -> int:
    ctx = _context(args)
    if args.sweep is not None:
        mus = [mu for n in range(args.sweep + 1) for mu in l_regular_partitions(n, ctx.k, ctx.l)]
    else:
        mus = [_mu(args, ctx)]
    llt, fast, kl = Session(ctx, "llt"), Session(ctx, "fast"), KLSession(ctx)
    problems: list[str] = []
    for i, mu in enumerate(mus):
        problems += _compare_one(mu, llt, fast, kl, args.inject_fault and i == len(mus) - 1)
    status = "PASS" if not problems else "FAIL"
    if args.format == "json":
        print(json.dumps({"status": status, "k": ctx.k, "l": ctx.l, "checked": len(mus),
                          "mismatches": problems}), file=out)
    else:
        print(f"{status}: k={ctx.k} l={ctx.l}, {len(mus)} diagram(s) checked (llt, fast, soergel)", file=out)
        for p in problems:
            print(f"  {p}", file=out)
    return EXIT_OK if not problems else EXIT_FAIL


def _bench_jobs(args):
    if args.suite is not None:
        if args.suite not in SUITES:
            raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
        wanted = args.algo.split(",") if args.algo_given else None
        for k, l, mu, algos in SUITES[args.suite]:
            for algo in algos:
                if wanted is None or algo in wanted:
                    yield Context(k, l), Partition(mu), algo
        return
    ctx = _context(args)
    mu = _mu(args, ctx)
    for algo in args.algo.split(","):
        yield ctx, mu, algo


def cmd_bench(args, out) -> int:
    for algo in args.algo.split(","):
        if algo not in ALGOS:
            raise UsageError(f"unknown algorithm {algo!r}")
    rows = []
    fmt = args.format if args.format != "text" else "csv"
    writer = csv.writer(out, lineterminator="\n") if fmt == "csv" else None
    if writer:
        writer.writerow(CSV_HEADER)
    for ctx, mu, algo in _bench_jobs(args):
        start = time.perf_counter()
        _, count = compute(mu, ctx, algo)
        secs = time.perf_counter() - start
        row = (algo, ctx.k, ctx.l, ",".join(map(str, mu.padded(ctx.k))), f"{secs:.4f}", count)
        rows.append(row)
        if writer:
            writer.writerow(row)
            out.flush()
    if fmt == "json":
        print(json.dumps([dict(zip(CSV_HEADER, r)) for r in rows]), file=out)
    return EXIT_OK


def cmd_decmat(args, out) -> int:
    ctx = _context(args)
    if args.n is None or args.n < 0:
        raise UsageError("--n must be a non-negative integer")
    mat = Session(ctx, args.algo if args.algo in ("llt", "fast") else "fast",
                  cache=_cache(args)).dec_matrix(args.n, at_one=args.at_one)
    cols = [format_partition(c) for c in mat.cols]
    cells = [[str(x) for x in row] for row in mat.entries]
    if args.format == "json":
        print(json.dumps({"k": ctx.k, "l": ctx.l, "n": args.n, "at_one": args.at_one,
                          "rows": [list(r) for r in mat.rows], "cols": [list(c) for c in mat.cols],
                          "entries": [[x if isinstance(x, int) else x.to_json() for x in row]
                                      for row in mat.entries]}), file=out)
    elif args.format == "csv":
        _write_csv([[format_partition(r)] + c for r, c in zip(mat.rows, cells)], ["la"] + cols, out)
    else:
        labels = [format_partition(r) for r in mat.rows]
        width = max([len(x) for x in labels + ["la"]])
        widths = [max([len(c)] + [len(row[j]) for row in cells]) for j, c in enumerate(cols)]
        print(" " * width + " | " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)), file=out)
        for lab, row in zip(labels, cells):
            print(lab.rjust(width) + " | " + "  ".join(x.rjust(w) for x, w in zip(row, widths)), file=out)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    bound = args.sweep if args.sweep is not None else 8
    report = run_selftest(args.max_k, args.max_l, bound)
    for name, n in report.per_property.items():
        print(f"  {name}: {n} checks", file=out)
    if report.ok:
        print(f"all {report.checks} properties passed", file=out)
        return EXIT_OK
    for f in report.failures:
        print(f"  FAIL {f}", file=out)
    print(f"{len(report.failures)} of {report.checks} properties failed", file=out)
    return EXIT_FAIL


def cmd_cache(args, out) -> int:
    cache = _cache(args)
    if cache is None:
        raise UsageError("no cache given (use --cache or CBT_CACHE)")
    if args.action == "info":
        print(f"{cache.path}: {len(cache)} entries, {cache.skipped} malformed lines skipped", file=out)
    elif args.action == "clear":
        cache.clear()
        print(f"{cache.path}: cleared", file=out)
    else:
        bad, keys = 0, list(cache.keys())
        for k, l, mode, mu in keys:
            ctx = Context(k, l)
            vec = cache.get(ctx, mode, mu)
            try:
                if vec is None:
                    raise AlgorithmError("undecodable")
                validate_gcb(mu, vec)
            except AlgorithmError as exc:
                bad += 1
                print(f"  invalid k={k} l={l} {mode} mu={format_partition(mu)}: {exc}", file=out)
        print(f"{len(keys) - bad} valid, {bad} invalid", file=out)
        return EXIT_OK if not bad else EXIT_FAIL
    return EXIT_OK


# -- parser ------------------------------------------------------------------


class _AlgoAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.algo_given = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="maximum number of rows")
    common.add_argument("--l", type=int, help="quantum characteristic l >= 2")
    common.add_argument("--mu", help="partition, comma separated (e.g. 20,10,0,0)")
    common.add_argument("--algo", default="fast", action=_AlgoAction,
                        help="llt, fast or soergel (bench accepts a comma list)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", help="NDJSON cache file (default: $CBT_CACHE)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="cbt", description="Lower global crystal basis of the truncated level-1 Fock space.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gcb", parents=[common], help="print G~(mu)")
    g.set_defaults(func=cmd_gcb)

    c = sub.add_parser("compare", parents=[common], help="cross-check llt, fast and soergel")
    c.add_argument("--sweep", type=int, help="check every l-regular mu with |mu| <= N")
    c.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_compare)

    b = sub.add_parser("bench", parents=[common], help="time algorithms, CSV output")
    b.add_argument("--suite", help="built-in input list (table1)")
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("decmat", parents=[common], help="decomposition matrix for partitions of n")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--at-one", action="store_true", help="specialize v = 1")
    d.set_defaults(func=cmd_decmat)

    s = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    s.add_argument("--sweep", type=int, help="size bound (default 8)")
    s.add_argument("--max-k", type=int, default=3)
    s.add_argument("--max-l", type=int, default=3)
    s.set_defaults(func=cmd_selftest)

    m = sub.add_parser("cache", parents=[common], help="inspect or clear the cache")
    m.add_argument("action", choices=("info", "clear", "verify"))
    m.set_defaults(func=cmd_cache)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "algo_given"):
        args.algo_given = False
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command not in ("bench",) and args.algo not in ALGOS:
        print(f"cbt: error: unknown algorithm {args.algo!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"cbt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgorithmError as exc:
        print(f"cbt: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
