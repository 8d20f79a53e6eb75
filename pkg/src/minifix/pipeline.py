"""End-to-end feedback generation.

Control-flow filter, top-k retrieval, then per candidate: variable
renaming, block and statement alignment, fix generation and test-driven
minimization.  The globally smallest fix set (by cardinality, then edit
cost, then candidate rank) is translated into feedback.  Later candidates
are searched only below the best cardinality found so far; a cardinality-1
repair stops the loop unless exhaustive mode is on.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

from .align import alpha_conversion, discrepancies
from .corpus import CorpusIndex, QueryView, top_k
from .defaults import (
    DEFAULT_BUDGET,
    DEFAULT_K,
    DEFAULT_LEVEL,
    DEFAULT_MAX_FIXES,
    DEFAULT_Q,
)
from .errors import (
    CfMismatch,
    EmptyCandidates,
    ExceedsThreshold,
    InvalidCandidate,
    NoCandidates,
)
from .feedback import FeedbackItem, to_json_payload, translate
from .interp import Suite, run_tests
from .lang.ast import Node
from .lang.parser import parse
from .repair import MinimalFixSet, gen_fixes, minimize


@dataclass
class RepairReport:
    change_count: int
    header: str
    items: list[FeedbackItem]
    json_payload: dict
    fix_set: MinimalFixSet
    candidate_id: Optional[str] = None
    candidate_rank: Optional[int] = None
    candidates_tried: int = 0
    trials: int = 0
    full_fixes: list = field(default_factory=list)  # pre-minimization fix set

    def text(self, level: int = DEFAULT_LEVEL) -> str:
        lines = [self.header]
        if level >= 2:
            lines.extend(f"  - {it.message}" for it in self.items if it.message)
        return "\n".join(lines) + "\n"


def feedback_generation(source: str, index: CorpusIndex, suite: Suite,
                        k: int = DEFAULT_K, q: int = DEFAULT_Q,
                        max_card: int = DEFAULT_MAX_FIXES,
                        level: int = DEFAULT_LEVEL, mode: str = "pacv",
                        *, prune: bool = True, group: bool = True,
                        exhaustive: bool = False,
                        budget: int = DEFAULT_BUDGET,
                        log=None) -> RepairReport:
    """Run the full repair pipeline on one submission.

    Raises ParseError, NoCandidates, or ExceedsThreshold; the exceptions
    carry the process exit codes used by the CLI.
    """
    pe = parse(source)
    return repair_program(pe, index, suite, k, q, max_card, level, mode,
                          prune=prune, group=group, exhaustive=exhaustive,
                          budget=budget, log=log)


def repair_program(pe: Node, index: CorpusIndex, suite: Suite,
                   k: int = DEFAULT_K, q: int = DEFAULT_Q,
                   max_card: int = DEFAULT_MAX_FIXES,
                   level: int = DEFAULT_LEVEL, mode: str = "pacv",
                   *, prune: bool = True, group: bool = True,
                   exhaustive: bool = False, budget: int = DEFAULT_BUDGET,
                   log=None) -> RepairReport:
    if q != index.q:
        raise ValueError(f"index was built at q={index.q}, requested q={q}")

    all_pass, _ = run_tests(pe, suite, budget)
    if all_pass:
        return _report(MinimalFixSet([], 0, 0, 1), level, None, None, 0)

    view = QueryView.of(pe, q)
    try:
        candidates = top_k(view, index, k, mode)
    except EmptyCandidates as err:
        raise NoCandidates(str(err)) from None

    best: Optional[MinimalFixSet] = None
    best_entry = None
    best_rank = None
    best_full: list = []
    trials = 0
    tried = 0
    for rank, (entry, _dist) in enumerate(candidates):
        cutoff = max_card if best is None else min(max_card, best.cardinality - 1)
        if cutoff < 1:
            break
        tried += 1
        pac, _mapping = alpha_conversion(pe, entry.ast(), q)
        try:
            fixes = gen_fixes(discrepancies(pe, pac))
            fm = minimize(pe, fixes, suite, cutoff,
                          prune=prune, group=group, budget=budget)
        except CfMismatch:
            continue  # renaming cannot change CF; defensive only
        except InvalidCandidate as err:
            if log is not None:
                print(f"candidate {entry.program_id}: invalid ({err})", file=log)
            continue
        except ExceedsThreshold:
            continue
        trials += fm.trials
        if best is None or (fm.cardinality, fm.total_edit_cost) < \
                (best.cardinality, best.total_edit_cost):
            best, best_entry, best_rank, best_full = fm, entry, rank, fixes
        if not exhaustive and best.cardinality <= 1:
            break

    if best is None:
        raise ExceedsThreshold(
            f"no candidate yields a repair within {max_card} fixes")
    report = _report(best, level, best_entry.program_id, best_rank, tried, trials)
    report.full_fixes = best_full
    return report


def _report(fm: MinimalFixSet, level: int, candidate_id, rank,
            tried: int, trials: int = 0) -> RepairReport:
    header, items = translate(fm, level)
    return RepairReport(
        change_count=fm.cardinality,
        header=header,
        items=items,
        json_payload=to_json_payload(fm, items),
        fix_set=fm,
        candidate_id=candidate_id,
        candidate_rank=rank,
        candidates_tried=tried,
        trials=trials,
    )
