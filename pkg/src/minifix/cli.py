"""The minifix command-line interface.

Subcommands: index (build a corpus index), repair (generate feedback for
a submission), bench (generate a mutation benchmark), compare (embedding
mode comparison), corpus (emit the synthetic solution corpus).

Exit codes: 0 success, 2 no control-flow match in the corpus, 3 repair
exceeds the fix cutoff, 4 parse error, 1 other errors.  Stdout and all
primary artifacts are byte-deterministic under fixed flags and seeds;
wall-clock timing goes to stderr or the --timings sidecar.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import compare_modes, gen_benchmark, load_benchmark
from .corpus import CorpusIndex, build_index
from .defaults import (
    DEFAULT_BUDGET,
    DEFAULT_K,
    DEFAULT_LEVEL,
    DEFAULT_MAX_FIXES,
    DEFAULT_Q,
)
from .errors import ExceedsThreshold, NoCandidates, ParseError
from .interp import load_suite
from .pipeline import feedback_generation
from .synth import make_suite, write_corpus


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minifix",
        description="Data-driven repair and feedback for MiniImp exercises")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="build a corpus index from correct solutions")
    p.add_argument("--solutions", required=True, help="directory of .mini files")
    p.add_argument("--tests", required=True, help="test suite JSON file")
    p.add_argument("--out", required=True, help="output index path (JSON lines)")
    p.add_argument("--q", type=int, default=DEFAULT_Q)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("repair", help="generate feedback for a submission")
    p.add_argument("submission", help="path to the incorrect program")
    p.add_argument("--index", required=True)
    p.add_argument("--tests", required=True)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--q", type=int, default=DEFAULT_Q)
    p.add_argument("--max-fixes", type=int, default=DEFAULT_MAX_FIXES)
    p.add_argument("--level", type=int, default=DEFAULT_LEVEL, choices=range(1, 6))
    p.add_argument("--mode", default="pacv", choices=("pacv", "cv", "ted"))
    p.add_argument("--format", default="text", choices=("text", "json"))
    p.add_argument("--no-prune", action="store_true",
                   help="disable reachability pruning")
    p.add_argument("--no-group", action="store_true",
                   help="disable co-occurrence grouping")
    p.add_argument("--exhaustive", action="store_true",
                   help="always try all k candidates")
    p.add_argument("--sample-frac", type=float, default=1.0,
                   help="down-sample the index to this fraction")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--dump-align", action="store_true",
                   help="dump the winning candidate's discrepancies to stderr")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("bench", help="generate a labeled mutation benchmark")
    p.add_argument("--index", required=True)
    p.add_argument("--tests", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--n-mutants", type=int, default=300)
    p.add_argument("--max-mutations", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="compare embedding modes on a benchmark")
    p.add_argument("--benchmark", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--tests", required=True)
    p.add_argument("--modes", default="pacv,cv,ted")
    p.add_argument("--k-range", default="1,3,5")
    p.add_argument("--max-fixes", type=int, default=DEFAULT_MAX_FIXES)
    p.add_argument("--q", type=int, default=DEFAULT_Q)
    p.add_argument("--out", help="write the capability report JSON here")
    p.add_argument("--timings", help="write wall-time summary JSON here "
                                     "(not byte-stable)")
    p.add_argument("--sample-frac", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("corpus", help="emit a synthetic solution corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--size", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite-out", help="also write the exercise suite here")
    p.set_defaults(func=cmd_corpus)
    return parser


def cmd_index(args) -> int:
    solutions = sorted(Path(args.solutions).glob("*.mini"))
    if not solutions:
        print(f"no .mini files in {args.solutions}", file=sys.stderr)
        return 1
    suite = load_suite(args.tests)
    index, rejections = build_index(solutions, suite, args.q, args.budget)
    index.save(args.out)
    for path, reason in rejections:
        print(f"rejected {path.name}: {reason}")
    print(f"indexed {len(index)} of {len(solutions)} solutions (q={args.q})")
    return 0


def cmd_repair(args) -> int:
    index = CorpusIndex.load(args.index)
    if args.sample_frac < 1.0:
        index = index.sampled(args.sample_frac, args.seed)
    suite = load_suite(args.tests)
    source = Path(args.submission).read_text()
    report = feedback_generation(
        source, index, suite, args.k, args.q, args.max_fixes, args.level,
        args.mode, prune=not args.no_prune, group=not args.no_group,
        exhaustive=args.exhaustive, budget=args.budget, log=sys.stderr)
    if args.dump_align:
        for f in report.full_fixes:
            row = {"kind": f.kind, "line": f.line,
                   "incorrect": None if f.source is None else f.source.kind,
                   "correct": None if f.payload is None else f.payload.kind}
            print(json.dumps(row, sort_keys=True), file=sys.stderr)
    if args.format == "json":
        print(json.dumps(report.json_payload, indent=2, sort_keys=True))
    else:
        sys.stdout.write(report.text(args.level))
    return 0


def cmd_bench(args) -> int:
    index = CorpusIndex.load(args.index)
    suite = load_suite(args.tests)
    cases = gen_benchmark(index, suite, args.out, args.n_mutants,
                          args.max_mutations, args.seed)
    print(f"wrote {len(cases)} mutants to {args.out} (seed={args.seed})")
    return 0


def cmd_compare(args) -> int:
    index = CorpusIndex.load(args.index)
    if args.sample_frac < 1.0:
        index = index.sampled(args.sample_frac, args.seed)
    suite = load_suite(args.tests)
    cases = load_benchmark(args.benchmark)
    modes = tuple(m.strip() for m in args.modes.split(",") if m.strip())
    ks = tuple(int(k) for k in args.k_range.split(","))
    report, timings = compare_modes(cases, index, suite, modes, ks,
                                    args.q, args.max_fixes)
    print(f"{'mode':<6} {'k':>3} {'capability':>11} {'repaired':>9}")
    for mode in modes:
        for k in ks:
            row = report["modes"][mode][str(k)]
            print(f"{mode:<6} {k:>3} {row['capability']:>11.4f} "
                  f"{row['repaired']:>6}/{report['n_cases']}")
    if args.out:
        Path(args.out).write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n")
    for mode in modes:
        for k in ks:
            t = timings[mode][str(k)]
            print(f"timing {mode} k={k}: mean {t['mean_ms']:.1f} ms, "
                  f"median {t['median_ms']:.1f} ms", file=sys.stderr)
    if args.timings:
        Path(args.timings).write_text(
            json.dumps(timings, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_corpus(args) -> int:
    suite = make_suite()
    paths = write_corpus(args.out, args.size, args.seed, suite)
    if args.suite_out:
        from .interp import save_suite
        save_suite(suite, args.suite_out)
    print(f"wrote {len(paths)} solutions to {args.out} (seed={args.seed})")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 4
    except NoCandidates as err:
        print(f"no candidates: {err}", file=sys.stderr)
        return 2
    except ExceedsThreshold as err:
        print(f"exceeds threshold: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
