"""Benchmark generation and the embedding-mode comparison harness.

gen_benchmark mutates indexed programs into labeled incorrect
submissions; run_benchmark drives the repair pipeline over them;
compare_modes evaluates capability per embedding mode and k.  All
artifacts are deterministic under a fixed seed; wall-clock timings are
kept out of the deterministic reports.
"""

from __future__ import annotations

import json
import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .corpus import CorpusIndex
from .defaults import DEFAULT_K, DEFAULT_MAX_FIXES, DEFAULT_Q
from .errors import ExceedsThreshold, NoCandidates
from .interp import Suite, run_tests
from .lang.parser import parse
from .lang.printer import pretty_print
from .mutate import mutate
from .pipeline import feedback_generation

#: Mutants can diverge; benchmark runs use a tight budget so timeouts
#: cost microseconds-scale steps, not the spec default of 10^6.
BENCH_BUDGET = 20_000


@dataclass
class BenchCase:
    case_id: str
    path: Path
    origin: str
    mutation_count: int
    mutations: list[str]


def gen_benchmark(index: CorpusIndex, suite: Suite, out_dir: str | Path,
                  n_mutants: int, max_mutations: int = 3,
                  seed: int = 0) -> list[BenchCase]:
    """Write n_mutants labeled incorrect programs derived from the index.

    Each mutant carries 1..max_mutations edits and fails at least one
    test (still-passing mutants are discarded and regenerated).
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    cases: list[BenchCase] = []
    guard = 0
    while len(cases) < n_mutants:
        guard += 1
        if guard > n_mutants * 60:
            raise RuntimeError("mutant generation stalled")
        entry = index.entries[rng.randrange(len(index.entries))]
        count = rng.randint(1, max_mutations)
        try:
            mutant, applied = mutate(entry.ast(), rng, count)
        except RuntimeError:
            continue
        source = pretty_print(mutant)
        try:
            reparsed = parse(source)
        except Exception:
            continue
        all_pass, _ = run_tests(reparsed, suite, BENCH_BUDGET)
        if all_pass:
            continue  # not actually broken
        case_id = f"case_{len(cases):04d}"
        path = out_dir / f"{case_id}.mini"
        path.write_text(source)
        cases.append(BenchCase(case_id, path, entry.program_id, count, applied))
    manifest = {
        "seed": seed,
        "n_mutants": n_mutants,
        "max_mutations": max_mutations,
        "cases": [
            {"id": c.case_id, "file": c.path.name, "origin": c.origin,
             "mutation_count": c.mutation_count, "mutations": c.mutations}
            for c in cases
        ],
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return cases


def load_benchmark(bench_dir: str | Path) -> list[BenchCase]:
    bench_dir = Path(bench_dir)
    manifest = json.loads((bench_dir / "manifest.json").read_text())
    return [
        BenchCase(c["id"], bench_dir / c["file"], c["origin"],
                  c["mutation_count"], c.get("mutations", []))
        for c in manifest["cases"]
    ]


@dataclass
class CaseResult:
    case_id: str
    status: str            # "repaired" | "exceeds_threshold" | "no_candidates"
    cardinality: Optional[int]
    mutation_count: int
    within_ground_truth: bool
    wall_ms: float


def run_case(case: BenchCase, index: CorpusIndex, suite: Suite,
             k: int = DEFAULT_K, q: int = DEFAULT_Q,
             max_card: int = DEFAULT_MAX_FIXES, mode: str = "pacv",
             **kwargs) -> CaseResult:
    source = case.path.read_text()
    start = time.perf_counter()
    try:
        report = feedback_generation(source, index, suite, k, q, max_card,
                                     mode=mode, budget=BENCH_BUDGET, **kwargs)
        status, card = "repaired", report.change_count
    except ExceedsThreshold:
        status, card = "exceeds_threshold", None
    except NoCandidates:
        status, card = "no_candidates", None
    wall_ms = (time.perf_counter() - start) * 1000.0
    within = status == "repaired" and card <= case.mutation_count
    return CaseResult(case.case_id, status, card, case.mutation_count,
                      within, wall_ms)


def run_benchmark(cases: list[BenchCase], index: CorpusIndex, suite: Suite,
                  k: int = DEFAULT_K, q: int = DEFAULT_Q,
                  max_card: int = DEFAULT_MAX_FIXES, mode: str = "pacv",
                  **kwargs) -> list[CaseResult]:
    return [run_case(c, index, suite, k, q, max_card, mode, **kwargs)
            for c in cases]


def capability(results: list[CaseResult]) -> float:
    """Fraction repaired with a minimal fix set within the cutoff."""
    if not results:
        return 0.0
    return sum(r.status == "repaired" for r in results) / len(results)


def compare_modes(cases: list[BenchCase], index: CorpusIndex, suite: Suite,
                  modes: tuple[str, ...] = ("pacv", "cv", "ted"),
                  ks: tuple[int, ...] = (1, 3, 5),
                  q: int = DEFAULT_Q, max_card: int = DEFAULT_MAX_FIXES,
                  ) -> tuple[dict, dict]:
    """Capability per (mode, k): the deterministic report, plus a separate
    timing summary (never part of the byte-stable artifact)."""
    report: dict = {"n_cases": len(cases), "modes": {}}
    timings: dict = {}
    for mode in modes:
        report["modes"][mode] = {}
        timings[mode] = {}
        for k in ks:
            results = run_benchmark(cases, index, suite, k=k, q=q,
                                    max_card=max_card, mode=mode)
            report["modes"][mode][str(k)] = {
                "capability": round(capability(results), 4),
                "repaired": sum(r.status == "repaired" for r in results),
                "within_ground_truth": sum(r.within_ground_truth for r in results),
            }
            times = [r.wall_ms for r in results]
            timings[mode][str(k)] = {
                "mean_ms": statistics.fmean(times),
                "median_ms": statistics.median(times),
            }
    return report, timings
