"""Command-line front end: ``kpath detect|find|bench|selftest``.

Exit status: 0 yes / path found, 1 no / none, 2 usage, I/O or format error,
3 extraction failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import gf2e, oracle
from . import group_algebra as ga
from .errors import ExtractionError, FormatError, ParameterError, UnsupportedError
from .graph import generate_instance, is_simple_path, read_graph
from .paths import DEFAULT_TRIALS, HELD_KARP_MAX_N, detect, find, held_karp_path, trial_outcomes
from .rng import DEFAULT_SEED, RngStream, entropy_seed

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_EXTRACTION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _seed(text: str) -> int:
    if text == "random":
        return entropy_seed()
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer or 'random'") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kpath", description="Randomized detection and construction of k-vertex simple paths.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, summary in (("detect", "decide whether a k-vertex path exists"), ("find", "print a k-vertex path")):
        p = sub.add_parser(name, help=summary)
        p.add_argument("graph", help="graph file ('n m directed|undirected' header, then 'u v' lines)")
        size = p.add_mutually_exclusive_group(required=True)
        size.add_argument("-k", type=_positive, help="number of vertices on the path")
        size.add_argument("--edges", type=_positive, metavar="L", help="number of edges on the path (k = L + 1)")
        p.add_argument("--trials", type=_positive, default=DEFAULT_TRIALS)
        p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help=f"integer or 'random' (default {DEFAULT_SEED})")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--verify", action="store_true", help="cross-check against an exact method")

    b = sub.add_parser("bench", help="time detect over a range of k")
    b.add_argument("--kind", choices=("random", "hampath", "grid"), default="random")
    b.add_argument("-n", type=_positive, default=60)
    b.add_argument("-p", type=float, default=0.2)
    b.add_argument("--k-min", type=_positive, default=10)
    b.add_argument("--k-max", type=_positive, default=17)
    b.add_argument("--repeats", type=_positive, default=5)
    b.add_argument("--rate-trials", type=_positive, default=16, help="trials used for the success-rate column")
    b.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    b.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("selftest", help="run the built-in algebra and oracle checks")
    return parser


def _k_of(args) -> int:
    return args.k if args.k is not None else args.edges + 1


def _exact_answer(g, k):
    """An exact yes/no, or None if the graph is too big for the exact methods."""
    if g.n <= HELD_KARP_MAX_N:
        return held_karp_path(g, k) is not None
    return None


def _run_search(args) -> int:
    k = _k_of(args)
    g = read_graph(args.graph)
    report = {"answer": None, "k": k, "n": g.n, "m": g.m, "trials": args.trials, "seed": args.seed}
    start = time.perf_counter()
    status = EXIT_NO
    notes = []
    if args.command == "detect":
        decision = detect(g, k, args.trials, args.seed)
        report["answer"] = "yes" if decision.answer else "no"
        status = EXIT_YES if decision.answer else EXIT_NO
        notes.append(f"trials used: {decision.trials_used}/{args.trials}")
        if args.verify:
            exact = _exact_answer(g, k)
            if exact is None:
                notes.append(f"verify: skipped (n > {HELD_KARP_MAX_N})")
            else:
                notes.append("verify: ok" if exact == decision.answer else "verify: MISMATCH")
                report["verified"] = exact == decision.answer
    else:
        try:
            path = find(g, k, args.seed, args.trials)
        except ExtractionError as exc:
            print(f"extraction failed: {exc}", file=sys.stderr)
            return EXIT_EXTRACTION
        report["answer"] = "yes" if path else "no"
        report["path"] = path
        status = EXIT_YES if path else EXIT_NO
        if args.verify and path is not None:
            ok = is_simple_path(g, path, k)
            notes.append("verify: ok" if ok else "verify: INVALID PATH")
            report["verified"] = ok
            if not ok:
                status = EXIT_EXTRACTION
    report["elapsed_ms"] = round(1000 * (time.perf_counter() - start), 3)

    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    elif args.command == "detect":
        print(report["answer"])
        for line in notes:
            print(line)
    else:
        print(" ".join(map(str, report["path"])) if report["path"] else "none")
        for line in notes:
            print(line)
    return status


def bench_rows(kind="random", n=60, p=0.2, ks=range(10, 18), repeats=5, rate_trials=16, seed=DEFAULT_SEED):
    """Median detect time per k on one generated instance.

    Repeats are interleaved across k (one sweep over every k per repeat) so
    that slow drifts in machine speed hit all k alike instead of skewing the
    ratios between neighbours.  Rows hold k, the median time in seconds, a
    per-trial success estimate and log2 of the ratio to the previous row.
    """
    ks = list(ks)
    stream = RngStream(seed)
    g = generate_instance(kind, n, p, stream.child("instance"))
    detect(g, 2, 1, 0)  # warm caches and lazily built tables
    times = {k: [] for k in ks}
    for r in range(repeats):
        for k in ks:
            s = stream.child("bench", k, r)
            t0 = time.perf_counter()
            detect(g, k, DEFAULT_TRIALS, s)
            times[k].append(time.perf_counter() - t0)
    rows = []
    prev = None
    for k in ks:
        med = float(np.median(times[k]))
        rate = float(trial_outcomes(g, k, rate_trials, stream.child("rate", k)).mean()) if rate_trials else math.nan
        ratio = math.log2(med / prev) if prev else math.nan
        rows.append({"k": k, "median_s": med, "trial_rate": rate, "log2_ratio": ratio})
        prev = med
    return g, rows


def _run_bench(args) -> int:
    if args.k_min > args.k_max:
        raise ParameterError("--k-min exceeds --k-max")
    g, rows = bench_rows(args.kind, args.n, args.p, range(args.k_min, args.k_max + 1), args.repeats, args.rate_trials, args.seed)
    if args.format == "json":
        clean = [{key: (None if isinstance(v, float) and math.isnan(v) else v) for key, v in row.items()} for row in rows]
        print(json.dumps({"kind": args.kind, "n": g.n, "m": g.m, "seed": args.seed, "rows": clean}))
        return EXIT_YES
    print(f"# {args.kind} n={g.n} m={g.m} seed={args.seed} repeats={args.repeats}")
    print(f"{'k':>3} {'median_s':>10} {'trial_rate':>10} {'log2_ratio':>10}")
    for row in rows:
        ratio = "" if math.isnan(row["log2_ratio"]) else f"{row['log2_ratio']:.2f}"
        print(f"{row['k']:>3} {row['median_s']:>10.4f} {row['trial_rate']:>10.3f} {ratio:>10}")
    return EXIT_YES


def selftest_checks():
    """Yield (name, passed) for a handful of fast correctness checks."""
    f4 = gf2e.field_for_ell(2)
    x = 0b10
    yield "x^3 = 1 in GF(4)", gf2e.power(f4, x, 3) == 1

    lhs = ga.from_terms({0: 1, 0b101: x}, 3, f4) + ga.from_terms({0: 1, 0b101: 1, 0b111: 1}, 3, f4)
    yield "worked addition", lhs == ga.from_terms({0b101: x ^ 1, 0b111: 1}, 3, f4)

    rng = RngStream(DEFAULT_SEED, ("selftest",)).generator
    ok = True
    for _ in range(5):
        a1, a2, b1, b2, b3 = (int(t) for t in rng.integers(0, 4, 5))
        m = lambda u, v: gf2e.mul(f4, u, v)  # noqa: E731
        a = ga.from_terms({0: a1, 0b101: a2}, 3, f4)
        b = ga.from_terms({0: b1, 0b101: b2, 0b111: b3}, 3, f4)
        want = ga.from_terms({0: m(a1, b1) ^ m(a2, b2), 0b010: m(a2, b3), 0b101: m(a1, b2) ^ m(a2, b1), 0b111: m(a1, b3)}, 3, f4)
        ok &= ga.mul_naive(a, b) == want and ga.mul_fast(a, b) == want
    yield "worked multiplication", ok

    spec = gf2e.field_for_k(6)
    ok = True
    for k in range(1, 7):
        for _ in range(5):
            a = ga.AlgebraElem(k, spec, rng.integers(0, spec.order, 1 << k))
            b = ga.AlgebraElem(k, spec, rng.integers(0, spec.order, 1 << k))
            ok &= ga.mul_fast(a, b) == ga.mul_naive(a, b)
    yield "fast multiply = naive", ok

    ok = True
    for _ in range(200):
        vs = [int(t) for t in rng.integers(0, 16, rng.integers(1, 6))]
        ok &= ga.is_zero(ga.elem_product(vs, 4, spec)) != oracle.is_independent(vs)
    yield "product of linear factors vs rank", ok

    ok = True
    for seed in range(20):
        g = generate_instance("random", 8, 0.3, seed)
        for k in (3, 5, 7):
            exact = oracle.brute_force_kpath(g, k) is not None
            ok &= detect(g, k, DEFAULT_TRIALS, seed).answer == exact
    yield "detect vs depth-first search", ok


def _run_selftest(args) -> int:
    failed = 0
    for name, passed in selftest_checks():
        print(f"{'ok  ' if passed else 'FAIL'} {name}")
        failed += not passed
    return EXIT_YES if not failed else EXIT_NO


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("detect", "find"):
            return _run_search(args)
        if args.command == "bench":
            return _run_bench(args)
        return _run_selftest(args)
    except FormatError as exc:
        print(f"{getattr(args, 'graph', '')}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
