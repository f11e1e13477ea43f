"""`primegen`: generate, verify, and benchmark the sieve family.

Subcommands:
  nth     print the n-th prime of one variant
  list    print the first n primes (or all primes up to a bound)
  count   print how many primes lie at or below a bound
  verify  run the cross-checks (variant vs oracle, wheel identities,
          erased/survivor induction, exactly-once tallies, queue shape)
  bench   desk-scale timing table shaped like a results table
  stats   instrumented counters for one variant as a JSON line

Exit codes: 0 ok, 1 usage, 2 resource/cap exceeded, 3 verification failed.

Benchmark cells run uninstrumented so wall times are honest; the counter
columns of a bench CSV are therefore zero. Use `stats` for counters.
"""

import argparse
import json
import platform
import statistics
import sys
import time
from dataclasses import dataclass
from itertools import islice
from math import isqrt

from . import oracle
from .pq import PQ_VARIANTS
from .sieves import STREAM_VARIANTS, VariantCapExceeded
from .streams import RunCounters, StreamError, StreamOverflow, take
from .wheels import Wheel, next_wheel1, wheel_from_primes, wheel4

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_VERIFY = 3

CSV_COLUMNS = ("variant", "n", "p_n", "wall_ns", "composites",
               "comparisons", "pulls", "peak_buffer")

#: column order of the stream-programs table and the queue-programs table
TABLE1_ORDER = ("td", "bs", "bs4", "h", "w", "es", "h4", "w4", "es4")
TABLE3_ORDER = ("on", "wpq", "epq", "on4", "wpq4", "epq4")

EULER_VARIANTS = ("h", "w", "es", "h4", "w4", "es4", "epq", "wpq",
                  "epq4", "wpq4")
CAPPED = ("turner", "naive-euler")
CAPPED_LIMIT = 2_000


def all_variants():
    merged = dict(STREAM_VARIANTS)
    merged.update(PQ_VARIANTS)
    return merged


class UsageError(Exception):
    pass


class CellTimeout(Exception):
    pass


class CheckFailure(Exception):
    pass


@dataclass
class RunStats:
    """One measured run of one variant."""

    variant: str
    n: int
    nth_prime: int
    wall_ns: int
    composites: int = 0
    comparisons: int = 0
    pulls: int = 0
    peak_buffer: int = 0

    def row(self):
        return (self.variant, self.n, self.nth_prime, self.wall_ns,
                self.composites, self.comparisons, self.pulls,
                self.peak_buffer)


@dataclass
class BenchReport:
    rows: list
    timeouts: set
    environment: str
    repeats: int


def resolve_variant(name, wheel=None):
    name = name.strip().lower()
    variants = all_variants()
    if wheel == 4 and not name.endswith("4"):
        name += "4"
    if name not in variants:
        raise UsageError(
            "unknown variant %r (choose from %s)"
            % (name, ", ".join(sorted(variants))))
    return variants[name]


def run_to_nth(variant, n, counters=None, timeout_s=None):
    """Pull the first n primes; cooperative timeout between pulls."""
    if n < 1:
        raise UsageError("--n must be >= 1")
    gen = variant.factory(counters=counters)
    started = time.perf_counter_ns()
    deadline = None
    if timeout_s is not None:
        deadline = started + int(timeout_s * 1e9)
    got = 0
    value = None
    while got < n:
        chunk = min(2048, n - got)
        block = take(gen, chunk)
        if len(block) < chunk:
            raise StreamError("%s ended after %d primes" % (variant.label,
                                                            got + len(block)))
        got += chunk
        value = block[-1]
        if deadline is not None and time.perf_counter_ns() > deadline:
            raise CellTimeout(variant.name)
    wall = time.perf_counter_ns() - started
    stats = RunStats(variant=variant.label, n=n, nth_prime=value, wall_ns=wall)
    if counters is not None:
        counters.pulls += got
        stats.composites = counters.composites
        stats.comparisons = counters.comparisons
        stats.pulls = counters.pulls
        stats.peak_buffer = counters.peak_buffer
    return stats


def primes_up_to_bound(variant, bound, counters=None):
    """All primes <= bound from one variant."""
    out = []
    for p in variant.factory(counters=counters):
        if p > bound:
            break
        out.append(p)
    if counters is not None:
        counters.pulls += len(out) + 1
    return out


def paper_time(ns):
    """minute'second^tenth, the compact table format (91.3s -> 1'31^3)."""
    tenths = round(ns / 1e8)
    minutes, rest = divmod(tenths, 600)
    seconds, tenth = divmod(rest, 10)
    if minutes:
        return "%d'%02d^%d" % (minutes, seconds, tenth)
    return "%d^%d" % (seconds, tenth)


def _format_cell(ns, paper):
    if ns is None:
        return "-"
    if paper:
        return paper_time(ns)
    return "%.1f" % (ns / 1e6)


# ---------------------------------------------------------------------------
# commands


def cmd_nth(args):
    variant = resolve_variant(args.algo, args.wheel)
    stats = run_to_nth(variant, args.n)
    print(stats.nth_prime)
    return EXIT_OK


def cmd_list(args):
    variant = resolve_variant(args.algo, args.wheel)
    if args.n is None and args.bound is None:
        raise UsageError("list needs --n or --bound")
    if args.n is not None:
        values = take(variant.factory(), args.n)
        if len(values) < args.n:
            raise StreamError("variant ended early")
    else:
        values = primes_up_to_bound(variant, args.bound)
    sys.stdout.write("\n".join(map(str, values)))
    if values:
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_count(args):
    if args.bound is None:
        raise UsageError("count needs --bound")
    variant = resolve_variant(args.algo, args.wheel)
    print(len(primes_up_to_bound(variant, args.bound)))
    return EXIT_OK


def cmd_stats(args):
    if args.bound is None:
        raise UsageError("stats needs --bound")
    variant = resolve_variant(args.algo, args.wheel)
    counters = RunCounters.with_tally()
    started = time.perf_counter_ns()
    primes = primes_up_to_bound(variant, args.bound, counters)
    wall = time.perf_counter_ns() - started
    in_bound = {v: c for v, c in counters.tally.items() if v <= args.bound}
    record = {
        "variant": variant.label,
        "bound": args.bound,
        "n": len(primes),
        "nth_prime": primes[-1] if primes else None,
        "wall_ns": wall,
        "composites": sum(in_bound.values()),
        "distinct_composites": len(in_bound),
        "comparisons": counters.comparisons,
        "pulls": counters.pulls,
        "peak_buffer": counters.peak_buffer,
    }
    print(json.dumps(record, sort_keys=False))
    return EXIT_OK


def _parse_exponents(text):
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise UsageError("bad exponent spec %r (use e.g. 14..18 or 14,16)"
                         ) from None


def _variant_list(args, default):
    if args.algo is None:
        names = list(default)
    else:
        names = [s.strip().lower() for s in args.algo.split(",")]
        if not any(names):
            raise UsageError("empty variant list")
    return [resolve_variant(name, args.wheel) for name in names]


def run_bench(variants, ns, repeats, timeout_s, parallel=False):
    """One warm-up plus `repeats` timed runs per (variant, n) cell."""
    rows = []
    timeouts = set()

    def run_cell(variant, n):
        walls = []
        for attempt in range(repeats + 1):
            try:
                stats = run_to_nth(variant, n, timeout_s=timeout_s)
            except (CellTimeout, VariantCapExceeded, StreamOverflow,
                    RecursionError):
                timeouts.add((variant.name, n))
                return None
            if attempt:           # first run is the warm-up
                walls.append(stats.wall_ns)
        median = int(statistics.median(walls))
        return RunStats(variant=variant.label, n=n,
                        nth_prime=stats.nth_prime, wall_ns=median)

    def run_variant(variant):
        out = []
        for n in ns:
            cell = run_cell(variant, n)
            if cell is not None:
                out.append(cell)
        return out

    if parallel:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=len(variants)) as pool:
            for chunk in pool.map(run_variant, variants):
                rows.extend(chunk)
    else:
        for variant in variants:
            rows.extend(run_variant(variant))
    env = "%s / Python %s" % (platform.platform(), platform.python_version())
    return BenchReport(rows=rows, timeouts=timeouts, environment=env,
                       repeats=repeats)


def _bench_order(variants):
    order = [*TABLE1_ORDER, *TABLE3_ORDER]
    extra = [v.name for v in variants if v.name not in order]
    ranked = [name for name in order if name in {v.name for v in variants}]
    return ranked + extra


def format_bench(report, variants, ns, fmt, paper=False):
    by_cell = {(r.variant, r.n): r for r in report.rows}
    names = _bench_order(variants)
    labels = {v.name: v.label for v in variants}
    if fmt == "json":
        payload = {
            "environment": report.environment,
            "repeats": report.repeats,
            "rows": [dict(zip(CSV_COLUMNS, r.row())) for r in report.rows],
            "timeouts": sorted(list(t) for t in report.timeouts),
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for n in ns:
            for name in names:
                row = by_cell.get((labels[name], n))
                if row is None:
                    lines.append("%s,%d,,-,0,0,0,0" % (labels[name], n))
                else:
                    lines.append(",".join(str(c) for c in row.row()))
        return "\n".join(lines) + "\n"
    # markdown pivot shaped like the results tables
    head = ["n"] + [labels[name] for name in names]
    lines = ["<!-- %s; median of %d runs, ms%s -->"
             % (report.environment, report.repeats,
                " (paper format)" if paper else "")]
    lines.append("| " + " | ".join(head) + " |")
    lines.append("|" + "---|" * len(head))
    for n in ns:
        cells = [str(n)]
        for name in names:
            row = by_cell.get((labels[name], n))
            cells.append(_format_cell(None if row is None else row.wall_ns,
                                      paper))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def cmd_bench(args):
    variants = _variant_list(args, default=[*TABLE1_ORDER, *TABLE3_ORDER])
    if args.n is not None:
        ns = [args.n]
    else:
        ns = [1 << e for e in _parse_exponents(args.exponents)]
    report = run_bench(variants, ns, repeats=args.repeats,
                       timeout_s=args.timeout, parallel=args.parallel)
    sys.stdout.write(format_bench(report, variants, ns, args.format,
                                  paper=args.paper_format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _check_variant_against_oracle(variant, n):
    limit = min(n, CAPPED_LIMIT) if variant.name in CAPPED else n
    expected = oracle.first_primes(limit)
    got = take(variant.factory(), limit)
    if got != expected:
        for i, (a, b) in enumerate(zip(got, expected)):
            if a != b:
                raise CheckFailure(
                    "%s diverges from the oracle at index %d: %d != %d"
                    % (variant.label, i, a, b))
        raise CheckFailure("%s produced %d primes, wanted %d"
                           % (variant.label, len(got), limit))
    return "first %d primes match the oracle" % limit


def _check_wheels():
    primes = oracle.first_primes(9)
    w = Wheel((1,), 0)
    for k in range(1, 8):
        w = next_wheel1(w, primes[k - 1])
        scratch = wheel_from_primes(primes[:k], primes[k])
        if w.deltas != scratch.deltas:
            raise CheckFailure("incremental w_%d != from-scratch wheel" % k)
        if sum(w.deltas) != oracle.primorial(k):
            raise CheckFailure("sum(w_%d) is not the %d-th primorial" % (k, k))
        if len(w.deltas) != oracle.totient(oracle.primorial(k)):
            raise CheckFailure("len(w_%d) is not phi(primorial)" % k)
    return "incremental = from-scratch for w_1..w_7, sums and lengths agree"


def _check_euler_sets(bound):
    from .sieves import es_step
    from .streams import count_from

    primes = oracle.first_primes(10)
    survivors = count_from(2)
    for k, p in enumerate(primes, start=1):
        erased, survivors_next = es_step(p, survivors)
        sets = oracle.euler_sets_brute_force(k, bound)
        sets.check_invariants()
        want = sorted(sets.erased[k - 1])
        got = []
        for v in erased:
            if v > bound:
                break
            got.append(v)
        if got != want:
            raise CheckFailure("erased stream at round %d != oracle" % k)
        survivors = survivors_next
    return "erased streams match the set induction for rounds 1..10"


def _check_single_generation(variant, bound):
    counters = RunCounters.with_tally()
    primes_up_to_bound(variant, bound, counters)
    composites = oracle.composites_up_to(bound)
    tally = {v: c for v, c in counters.tally.items() if v <= bound}
    if sorted(tally) != composites:
        raise CheckFailure("%s generated a different composite set below %d"
                           % (variant.label, bound))
    bad = [v for v, c in tally.items() if c != 1]
    if bad:
        raise CheckFailure("%s generated %d twice" % (variant.label, min(bad)))
    return "every composite below %d generated exactly once" % bound


def _check_pq_shape(variant, n):
    counters = RunCounters()
    stats = run_to_nth(variant, n, counters=counters)
    expect = len(oracle.primes_up_to(isqrt(stats.nth_prime)))
    if variant.wheel:
        expect -= 4
    if abs(counters.pq_size - expect) > 1:
        raise CheckFailure(
            "%s queue holds %d entries after p_%d, expected about %d"
            % (variant.label, counters.pq_size, n, expect))
    if counters.pop_inversions:
        raise CheckFailure("%s popped keys out of order" % variant.label)
    return "queue size %d ~ pi(sqrt(p_n)) and pops weakly increasing" % (
        counters.pq_size)


def run_verify(variants, n, bound, out=None):
    out = out or sys.stdout
    checks = []
    for variant in variants:
        checks.append(("%s/oracle" % variant.name,
                       lambda v=variant: _check_variant_against_oracle(v, n)))
    checks.append(("wheels", _check_wheels))
    checks.append(("euler-sets", lambda: _check_euler_sets(bound)))
    for variant in variants:
        if variant.name in EULER_VARIANTS:
            checks.append(
                ("%s/exactly-once" % variant.name,
                 lambda v=variant: _check_single_generation(v, bound)))
        if variant.family == "pq":
            checks.append(("%s/queue" % variant.name,
                           lambda v=variant: _check_pq_shape(v, min(n, 10_000))))
    failures = 0
    for name, check in checks:
        try:
            detail = check()
        except CheckFailure as exc:
            failures += 1
            out.write("FAIL %-22s %s\n" % (name, exc))
        else:
            out.write("PASS %-22s %s\n" % (name, detail))
    return failures


def cmd_verify(args):
    variants = _variant_list(args, default=list(all_variants()))
    n = args.n if args.n is not None else 100_000
    bound = args.bound if args.bound is not None else 10_000
    failures = run_verify(variants, n, bound)
    if failures:
        print("%d check(s) failed" % failures, file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="primegen", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algo_default=None):
        p.add_argument("--algo", default=algo_default,
                       help="variant name, or comma list for verify/bench")
        p.add_argument("--wheel", type=int, choices=(0, 4), default=None,
                       help="mount the 210-wheel form of the variant")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--bound", type=int, default=None)

    p_nth = sub.add_parser("nth", help="print the n-th prime")
    common(p_nth)
    p_nth.set_defaults(fn=cmd_nth, needs_algo=True, needs_n=True)

    p_list = sub.add_parser("list", help="print primes")
    common(p_list)
    p_list.set_defaults(fn=cmd_list, needs_algo=True)

    p_count = sub.add_parser("count", help="count primes up to a bound")
    common(p_count)
    p_count.set_defaults(fn=cmd_count, needs_algo=True)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    common(p_verify)
    p_verify.set_defaults(fn=cmd_verify)

    p_stats = sub.add_parser("stats", help="instrumented counters as JSON")
    common(p_stats)
    p_stats.set_defaults(fn=cmd_stats, needs_algo=True)

    p_bench = sub.add_parser("bench", help="desk-scale timing table")
    common(p_bench)
    p_bench.add_argument("--exponents", default="14..16",
                         help="powers of two to target, e.g. 16..20 or 14,18")
    p_bench.add_argument("--format", choices=("csv", "md", "json"),
                         default="md")
    p_bench.add_argument("--repeats", type=int, default=5)
    p_bench.add_argument("--timeout", type=float, default=60.0,
                         help="per-run cell timeout in seconds")
    p_bench.add_argument("--parallel", action="store_true",
                         help="run variants on separate threads")
    p_bench.add_argument("--paper-format", action="store_true",
                         help="print cells as minute'second^tenth")
    p_bench.set_defaults(fn=cmd_bench)

    for p in (p_nth, p_list, p_count, p_stats, p_verify):
        p.set_defaults(format="csv")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "needs_algo", False) and not args.algo:
            raise UsageError("%s needs --algo" % args.command)
        if getattr(args, "needs_n", False) and args.n is None:
            raise UsageError("%s needs --n" % args.command)
        return args.fn(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (VariantCapExceeded, StreamOverflow, OverflowError,
            RecursionError, MemoryError, CellTimeout) as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except StreamError as exc:
        print("stream error: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
