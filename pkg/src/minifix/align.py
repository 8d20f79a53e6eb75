"""Aligning a correct program against an incorrect one.

Three stages: variable renaming driven by usage-set embeddings with
Tukey outlier removal, fragmentation into basic blocks (1-1 by equal
control flow), and order-preserving statement matching inside each
aligned block pair, minimizing tree edit distance plus gap costs.
The result is a list of statement-level discrepancies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .defaults import DEFAULT_Q
from .embed import MINIIMP_ALPHABET, Pacv, forest_pacv, pacv_distance, tree_edit_distance
from .errors import CfMismatch
from .lang.ast import (
    CONTROL_KINDS,
    Node,
    Span,
    binarize,
    clone,
    entry_func,
    entry_params,
    param_name,
    rename_variables,
    renumber,
)
from .lang.cf import cf_signature

_EXHAUSTIVE_ASSIGN_LIMIT = 50_000
_ALPHA_ID_BASE = 1_000_000  # keeps renamed-candidate node ids disjoint from pe's


# ---------------------------------------------------------------------------
# Units and basic blocks
# ---------------------------------------------------------------------------

@dataclass
class Unit:
    """A matchable non-control statement, loop header, or branch condition."""

    role: str       # "stmt" | "if_cond" | "while_cond" | "for_header"
    tree: Node
    owner_id: int   # node_id of the statement or of the owning construct
    line: int
    _mentions: Optional[frozenset] = field(default=None, repr=False)

    def mentions(self) -> frozenset:
        if self._mentions is None:
            self._mentions = frozenset(_featured_vars(self.tree))
        return self._mentions

    def size(self) -> int:
        return self.tree.size()


def _featured_vars(tree: Node) -> set[str]:
    """Variables featured by a statement; a Decl's declared-name position
    does not count (a declared-but-unused variable has an empty usage set)."""
    out: set[str] = set()
    stack = [(tree, False)]
    while stack:
        node, skip_self = stack.pop()
        if node.kind == "Var" and node.payload and not skip_self:
            out.add(node.payload)
        kids = node.children
        if node.kind == "Decl" and kids:
            stack.append((kids[0], True))
            stack.extend((c, False) for c in kids[1:])
        else:
            stack.extend((c, False) for c in kids)
    return out


@dataclass
class BasicBlock:
    kind: str               # "run" | "header"
    units: list[Unit]
    container_id: int       # Block node_id for runs, construct id for headers
    start_index: int        # child index of the run's first slot (-1 for headers)
    order: int              # position in the program's block sequence
    container_span: Span = field(default_factory=Span)


def _stmt_unit(stmt: Node) -> Unit:
    return Unit("stmt", stmt, stmt.node_id, stmt.span.line)


def _header_unit(ctrl: Node) -> Unit:
    if ctrl.kind == "If":
        return Unit("if_cond", ctrl.children[0], ctrl.node_id, ctrl.span.line)
    if ctrl.kind == "While":
        return Unit("while_cond", ctrl.children[0], ctrl.node_id, ctrl.span.line)
    header = Node("For", None, ctrl.children[:3], ctrl.node_id, ctrl.span)
    return Unit("for_header", header, ctrl.node_id, ctrl.span.line)


def basic_blocks(program: Node) -> list[BasicBlock]:
    """Fragment a program into run- and header-blocks in program order.

    Runs delimited by control statements are always emitted, empty or
    not, so the block sequence shape is a function of the control-flow
    signature alone.
    """
    blocks: list[BasicBlock] = []
    fn = entry_func(program)
    container = fn.children[-1] if fn is not None else program
    _walk_stmts(container.children, container, blocks)
    return blocks


def _walk_stmts(stmts: list[Node], container: Node, blocks: list[BasicBlock]) -> None:
    run: list[Unit] = []
    run_start = 0
    for idx, stmt in enumerate(stmts):
        if stmt.kind in CONTROL_KINDS:
            blocks.append(BasicBlock("run", run, container.node_id, run_start,
                                     len(blocks), container.span))
            run = []
            run_start = idx + 1
            _emit_control(stmt, blocks)
        else:
            run.append(_stmt_unit(stmt))
    blocks.append(BasicBlock("run", run, container.node_id, run_start,
                             len(blocks), container.span))


def _emit_control(ctrl: Node, blocks: list[BasicBlock]) -> None:
    blocks.append(BasicBlock("header", [_header_unit(ctrl)], ctrl.node_id, -1,
                             len(blocks), ctrl.span))
    if ctrl.kind == "If":
        then = ctrl.children[1]
        _walk_stmts(then.children, then, blocks)
        if len(ctrl.children) == 3:
            els = ctrl.children[2]
            inner = els.children[0]
            if inner.kind == "If":
                _walk_stmts([inner], els, blocks)
            else:
                _walk_stmts(inner.children, inner, blocks)
    elif ctrl.kind == "While":
        body = ctrl.children[1]
        _walk_stmts(body.children, body, blocks)
    else:  # For
        body = ctrl.children[3]
        _walk_stmts(body.children, body, blocks)


# ---------------------------------------------------------------------------
# Usage sets and usage vectors
# ---------------------------------------------------------------------------

def ordered_vars(program: Node) -> list[str]:
    """All variable names (including parameters) by first occurrence."""
    seen: list[str] = []
    have = set()
    for n in program.preorder():
        name = None
        if n.kind == "Var":
            name = n.payload
        elif n.kind == "Param" and n.payload:
            name = param_name(n.payload)
        if name and name not in have:
            have.add(name)
            seen.append(name)
    return seen


def usage_sets(program: Node) -> dict[str, list[Unit]]:
    """variable -> the units featuring it (loop headers and branch
    conditions included), in program order; complete over Vars(program)."""
    units = [u for b in basic_blocks(program) for u in b.units]
    sets: dict[str, list[Unit]] = {v: [] for v in ordered_vars(program)}
    for unit in units:
        for name in unit.mentions():
            if name in sets:
                sets[name].append(unit)
    return sets


def usage_vector(units: list[Unit], q: int = DEFAULT_Q) -> Pacv:
    """Single Pacv summarizing a usage set: the forest embedding of the
    member statements (per-pattern height lists concatenated)."""
    return forest_pacv([binarize(u.tree) for u in units], q, MINIIMP_ALPHABET)


# ---------------------------------------------------------------------------
# Variable-usage based renaming
# ---------------------------------------------------------------------------

@dataclass
class VarMapping:
    pairs: list[tuple[str, str, float]]  # (var in pc, var in pe, distance)
    unmatched_c: set[str]
    unmatched_e: set[str]


def _min_cost_injection(dist: np.ndarray) -> list[tuple[int, int]]:
    """Optimal assignment of every row to a distinct column (rows <= cols).

    Exhaustive when small (first minimum in lexicographic order wins),
    Hungarian-style via scipy otherwise; both are exact.
    """
    n_rows, n_cols = dist.shape
    if n_rows == 0:
        return []
    count = 1
    for t in range(n_cols, n_cols - n_rows, -1):
        count *= t
        if count > _EXHAUSTIVE_ASSIGN_LIMIT:
            break
    if count <= _EXHAUSTIVE_ASSIGN_LIMIT:
        best, best_cost = None, None
        for cols in itertools.permutations(range(n_cols), n_rows):
            cost = sum(dist[r, c] for r, c in enumerate(cols))
            if best_cost is None or cost < best_cost:
                best, best_cost = cols, cost
        return list(enumerate(best))
    from scipy.optimize import linear_sum_assignment

    rows, cols = linear_sum_assignment(dist)
    return sorted(zip(rows.tolist(), cols.tolist()))


def _tukey_fence(sample: list[float]) -> float:
    q1, q3 = np.percentile(np.asarray(sample, dtype=float), [25, 75])
    return float(q3 + 1.5 * (q3 - q1))


def match_variables(pe: Node, pc: Node, q: int = DEFAULT_Q) -> VarMapping:
    """Minimum-total-distance mapping between the variable sets.

    Entry parameters are paired positionally (test arguments bind by
    position); the remaining variables are assigned by usage-vector
    distance, injecting the smaller set into the larger.  Pairs whose
    distance exceeds the Tukey fence (Q3 + 1.5 IQR over all matched
    pairs) are released into the unmatched sets.
    """
    vars_e = ordered_vars(pe)
    vars_c = ordered_vars(pc)
    params_e = [param_name(p.payload) for p in entry_params(pe)]
    params_c = [param_name(p.payload) for p in entry_params(pc)]
    pinned = [(c, e) for c, e in zip(params_c, params_e)]
    pinned_c = {c for c, _ in pinned}
    pinned_e = {e for _, e in pinned}

    use_e = usage_sets(pe)
    use_c = usage_sets(pc)
    vec_e = {v: usage_vector(use_e[v], q) for v in vars_e}
    vec_c = {v: usage_vector(use_c[v], q) for v in vars_c}

    free_e = [v for v in vars_e if v not in pinned_e]
    free_c = [v for v in vars_c if v not in pinned_c]

    pairs: list[tuple[str, str, float]] = [
        (c, e, pacv_distance(vec_c[c], vec_e[e])) for c, e in pinned]

    if free_c and free_e:
        if len(free_c) <= len(free_e):
            small, large, c_is_small = free_c, free_e, True
        else:
            small, large, c_is_small = free_e, free_c, False
        dist = np.empty((len(small), len(large)))
        for i, a in enumerate(small):
            va = vec_c[a] if c_is_small else vec_e[a]
            for j, b in enumerate(large):
                vb = vec_e[b] if c_is_small else vec_c[b]
                dist[i, j] = pacv_distance(va, vb)
        free_pairs = []
        for i, j in _min_cost_injection(dist):
            c, e = (small[i], large[j]) if c_is_small else (large[j], small[i])
            free_pairs.append((c, e, float(dist[i, j])))
    else:
        free_pairs = []

    kept_free = free_pairs
    if free_pairs:
        fence = _tukey_fence([d for _, _, d in pairs + free_pairs])
        kept_free = [p for p in free_pairs if p[2] <= fence]
    pairs.extend(kept_free)

    matched_c = {c for c, _, _ in pairs}
    matched_e = {e for _, e, _ in pairs}
    return VarMapping(
        pairs=pairs,
        unmatched_c={v for v in vars_c if v not in matched_c},
        unmatched_e={v for v in vars_e if v not in matched_e},
    )


def alpha_conversion(pe: Node, pc: Node,
                     q: int = DEFAULT_Q) -> tuple[Node, VarMapping]:
    """Rename pc's variables into pe's namespace.

    Matched variables take their pe counterpart's name; unmatched pc
    variables keep their own name when it collides with nothing in pe,
    otherwise they get a fresh suffixed name.  The entry header (function
    name, parameter annotations) is normalized to pe's so that applying
    every fix rewrites pe exactly into the result.
    """
    mapping = match_variables(pe, pc, q)
    rename = {c: e for c, e, _ in mapping.pairs}
    taken = set(ordered_vars(pe)) | set(rename.values())
    for v in sorted(mapping.unmatched_c):
        fresh = v
        counter = 2
        while fresh in taken:
            fresh = f"{v}_{counter}"
            counter += 1
        if fresh != v:
            rename[v] = fresh
        taken.add(fresh)

    pac = clone(pc)
    rename_variables(pac, rename)
    fn_e, fn_c = entry_func(pe), entry_func(pac)
    if fn_e is not None and fn_c is not None:
        fn_c.payload = fn_e.payload
        params_e = entry_params(pe)
        params_c = entry_params(pac)
        for p_c, p_e in zip(params_c, params_e):
            p_c.payload = p_e.payload
    renumber(pac, _ALPHA_ID_BASE)
    return pac, mapping


# ---------------------------------------------------------------------------
# Two-level statement matching
# ---------------------------------------------------------------------------

@dataclass
class Discrepancy:
    """An aligned statement pair; absent sides mark insertions/deletions."""

    e_unit: Optional[Unit]
    c_unit: Optional[Unit]
    block_e: BasicBlock
    e_pos: int   # unit index in the pe block (insert position for insertions)
    ted: int = 0


def align_blocks(pe: Node, pac: Node) -> list[tuple[BasicBlock, BasicBlock]]:
    """Positional 1-1 pairing of basic blocks; requires equal CF."""
    if cf_signature(pe) != cf_signature(pac):
        raise CfMismatch("programs have different control-flow signatures")
    blocks_e = basic_blocks(pe)
    blocks_c = basic_blocks(pac)
    assert len(blocks_e) == len(blocks_c), "block shape must follow CF"
    return list(zip(blocks_e, blocks_c))


def match_statements(block_e: BasicBlock,
                     block_c: BasicBlock) -> list[Discrepancy]:
    """Order-preserving alignment of the two unit sequences.

    Minimizes sum of matched TEDs plus gap costs (a statement's node
    count); matched pairs with TED 0 produce no discrepancy.  Ties prefer
    matching, then deletion.
    """
    eu, cu = block_e.units, block_c.units
    m, n = len(eu), len(cu)
    match_cost = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            match_cost[i][j] = tree_edit_distance(eu[i].tree, cu[j].tree)
    e_gap = [u.size() for u in eu]
    c_gap = [u.size() for u in cu]

    dp = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        dp[i][0] = dp[i - 1][0] + e_gap[i - 1]
    for j in range(1, n + 1):
        dp[0][j] = dp[0][j - 1] + c_gap[j - 1]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            dp[i][j] = min(dp[i - 1][j - 1] + match_cost[i - 1][j - 1],
                           dp[i - 1][j] + e_gap[i - 1],
                           dp[i][j - 1] + c_gap[j - 1])

    # Backtrack from the end, preferring match > delete > insert on ties.
    steps: list[tuple[str, int, int]] = []
    i, j = m, n
    while i > 0 or j > 0:
        if i > 0 and j > 0 and dp[i][j] == dp[i - 1][j - 1] + match_cost[i - 1][j - 1]:
            steps.append(("match", i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and dp[i][j] == dp[i - 1][j] + e_gap[i - 1]:
            steps.append(("delete", i - 1, -1))
            i -= 1
        else:
            steps.append(("insert", i, j - 1))
            j -= 1
    steps.reverse()

    out: list[Discrepancy] = []
    for op, ei, cj in steps:
        if op == "match":
            ted = match_cost[ei][cj]
            if ted > 0:
                out.append(Discrepancy(eu[ei], cu[cj], block_e, ei, ted))
        elif op == "delete":
            out.append(Discrepancy(eu[ei], None, block_e, ei))
        else:
            out.append(Discrepancy(None, cu[cj], block_e, ei))
    return out


def discrepancies(pe: Node, pac: Node) -> list[Discrepancy]:
    """All statement-level discrepancies across aligned blocks."""
    out: list[Discrepancy] = []
    for be, bc in align_blocks(pe, pac):
        out.extend(match_statements(be, bc))
    return out
