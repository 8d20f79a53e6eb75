"""Fix generation and test-driven minimization.

Each discrepancy yields one fix (insertion, deletion, or modification).
Minimization enumerates co-occurrence-group subsets by ascending
cardinality, total edit cost, then anchor order, returning the first
subset whose patched program passes the whole suite.  Reachability
pruning defers (rather than drops) subsets touching unreached anchors,
so pruning never changes the result, only the number of dynamic trials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .align import Discrepancy
from .defaults import DEFAULT_BUDGET, DEFAULT_MAX_FIXES
from .errors import ConflictingFixes, ExceedsThreshold, InvalidCandidate
from .interp import Suite, run_tests
from .lang.ast import Node, clone, renumber, structural_equal, var_names
from .embed import tree_edit_distance


@dataclass
class Fix:
    kind: str                       # "insertion" | "deletion" | "modification"
    role: str                       # unit role of the target
    block_id: int                   # container Block node_id (run units)
    construct_id: Optional[int]     # If/While/For node_id (header units)
    stmt_id: Optional[int]          # pe statement node_id (deletion/modification)
    insert_index: Optional[int]     # Block child index (insertions)
    seq: int                        # order among insertions at one index
    payload: Optional[Node]         # statement from the correct side
    source: Optional[Node]          # statement from the incorrect side
    ops: list[tuple[Optional[Node], Optional[Node]]]  # focused sub-diffs
    cost: int
    line: int
    reach_id: int                   # node_id checked against coverage
    order_key: tuple

    def anchor_token(self) -> tuple:
        if self.kind == "insertion":
            return ("ins", self.block_id, self.insert_index, self.seq)
        if self.role == "stmt":
            return ("stmt", self.stmt_id)
        return ("hdr", self.construct_id)


@dataclass
class FixGroup:
    fixes: list[Fix]
    reason: Optional[str]           # "SameStatement" | "DefUseDependency" | None
    cost: int
    order_key: tuple


@dataclass
class MinimalFixSet:
    fixes: list[Fix]
    cardinality: int                # group count
    total_edit_cost: int
    trials: int = 0


def tree_diff(a: Node, b: Node) -> list[tuple[Optional[Node], Optional[Node]]]:
    """Minimal differing subtree pairs between two statements."""
    diffs: list[tuple[Optional[Node], Optional[Node]]] = []
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x.kind == y.kind and x.payload == y.payload \
                and len(x.children) == len(y.children):
            stack.extend(zip(x.children, y.children))
        else:
            diffs.append((x, y))
    diffs.reverse()
    return diffs


def gen_fixes(disc: list[Discrepancy]) -> list[Fix]:
    """One fix per discrepancy, per the insertion/deletion/modification cases."""
    fixes: list[Fix] = []
    for d in disc:
        block = d.block_e
        if d.e_unit is None:  # insertion of the correct-side statement
            payload = clone(d.c_unit.tree)
            fixes.append(Fix(
                kind="insertion", role=d.c_unit.role,
                block_id=block.container_id, construct_id=None, stmt_id=None,
                insert_index=block.start_index + d.e_pos, seq=len(fixes),
                payload=payload, source=None, ops=[(None, payload)],
                cost=payload.size(), line=_insert_line(d),
                reach_id=block.container_id,
                order_key=(block.order, d.e_pos, 0, len(fixes)),
            ))
        elif d.c_unit is None:  # deletion of the incorrect-side statement
            fixes.append(Fix(
                kind="deletion", role=d.e_unit.role,
                block_id=block.container_id, construct_id=None,
                stmt_id=d.e_unit.owner_id, insert_index=None, seq=0,
                payload=None, source=d.e_unit.tree,
                ops=[(d.e_unit.tree, None)],
                cost=d.e_unit.size(), line=d.e_unit.line,
                reach_id=d.e_unit.owner_id,
                order_key=(block.order, d.e_pos, 1, len(fixes)),
            ))
        else:  # modification
            is_header = d.e_unit.role != "stmt"
            fixes.append(Fix(
                kind="modification", role=d.e_unit.role,
                block_id=block.container_id,
                construct_id=d.e_unit.owner_id if is_header else None,
                stmt_id=None if is_header else d.e_unit.owner_id,
                insert_index=None, seq=0,
                payload=clone(d.c_unit.tree), source=d.e_unit.tree,
                ops=tree_diff(d.e_unit.tree, d.c_unit.tree),
                cost=d.ted, line=d.e_unit.line,
                reach_id=d.e_unit.owner_id,
                order_key=(block.order, d.e_pos, 1, len(fixes)),
            ))
    return fixes


def _insert_line(d: Discrepancy) -> int:
    units = d.block_e.units
    if d.e_pos < len(units):
        return units[d.e_pos].line
    return d.block_e.container_span.end_line or (units[-1].line if units else 1)


def apply_fixes(pe: Node, fixes: list[Fix]) -> Node:
    """Apply a conflict-free subset to a fresh copy of pe."""
    seen = set()
    for f in fixes:
        token = f.anchor_token()
        if token in seen:
            raise ConflictingFixes(f"two fixes target {token}")
        seen.add(token)

    id_map: dict[int, Node] = {}
    root = clone(pe, id_map)

    deletions: set[int] = set()
    mods: dict[int, Node] = {}
    inserts: dict[int, list[tuple[int, int, Node]]] = {}
    for f in fixes:
        if f.kind == "insertion":
            inserts.setdefault(f.block_id, []).append(
                (f.insert_index, f.seq, clone(f.payload)))
        elif f.kind == "deletion":
            deletions.add(f.stmt_id)
        elif f.role == "stmt":
            mods[f.stmt_id] = clone(f.payload)
        else:
            node = id_map[f.construct_id]
            payload = clone(f.payload)
            if f.role == "for_header":
                node.children[:3] = payload.children
            else:  # if_cond / while_cond
                node.children[0] = payload

    for block_id, ins in inserts.items():
        block = id_map[block_id]
        at: dict[int, list[Node]] = {}
        for index, _, payload in sorted(ins, key=lambda t: (t[0], t[1])):
            at.setdefault(index, []).append(payload)
        new_children: list[Node] = []
        for i, child in enumerate(block.children):
            new_children.extend(at.pop(i, ()))
            new_children.append(child)
        for index in sorted(at):
            new_children.extend(at[index])
        block.children = new_children

    if deletions or mods:
        _rewrite_runs(root, deletions, mods)
    return root


def _rewrite_runs(root: Node, deletions: set[int], mods: dict[int, Node]) -> None:
    for node in root.preorder():
        if not node.children:
            continue
        changed = False
        new_children = []
        for child in node.children:
            if child.node_id in deletions:
                changed = True
                continue
            if child.node_id in mods:
                new_children.append(mods[child.node_id])
                changed = True
                continue
            new_children.append(child)
        if changed:
            node.children = new_children


def _definitions(program: Node) -> set[str]:
    """Names syntactically defined anywhere: declarations, assignment
    targets, parameters (writes auto-declare in MiniImp)."""
    defs: set[str] = set()
    for n in program.preorder():
        if n.kind == "Decl":
            defs.add(n.children[0].payload)
        elif n.kind == "Assign":
            target = n.children[0]
            base = target if target.kind == "Var" else target.children[0]
            defs.add(base.payload)
        elif n.kind == "Param" and n.payload:
            defs.add(n.payload.split(":", 1)[0])
    return defs


def _payload_defs(stmt: Node) -> set[str]:
    defs: set[str] = set()
    for n in stmt.preorder():
        if n.kind == "Decl":
            defs.add(n.children[0].payload)
        elif n.kind == "Assign":
            target = n.children[0]
            base = target if target.kind == "Var" else target.children[0]
            defs.add(base.payload)
    return defs


def group_fixes(fixes: list[Fix], pe: Node) -> list[FixGroup]:
    """Partition into co-occurrence groups.

    Fixes on the same statement merge; an insertion defining a variable
    with no definition anywhere in pe merges with the fixes whose new
    statements use that variable; the rest are singletons.
    """
    parent = list(range(len(fixes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    same_stmt_members: set[int] = set()
    by_anchor: dict[tuple, int] = {}
    for i, f in enumerate(fixes):
        key = ("stmt", f.stmt_id) if f.stmt_id is not None else \
              ("hdr", f.construct_id) if f.construct_id is not None else ("ins", i)
        if key in by_anchor:
            union(by_anchor[key], i)
            same_stmt_members.update((by_anchor[key], i))
        else:
            by_anchor[key] = i

    pe_defs = _definitions(pe)
    for i, f in enumerate(fixes):
        if f.kind != "insertion" or f.payload is None:
            continue
        fresh = {d for d in _payload_defs(f.payload) if d not in pe_defs}
        if not fresh:
            continue
        for j, g in enumerate(fixes):
            if i == j or g.payload is None:
                continue
            uses = var_names(g.payload)
            if g.payload.kind == "Decl":
                uses = uses - {g.payload.children[0].payload}
            if uses & fresh:
                union(i, j)

    members: dict[int, list[int]] = {}
    for i in range(len(fixes)):
        members.setdefault(find(i), []).append(i)
    groups = []
    for idxs in members.values():
        fs = sorted((fixes[i] for i in idxs), key=lambda f: f.order_key)
        if len(fs) == 1:
            reason = None
        elif any(i in same_stmt_members for i in idxs):
            reason = "SameStatement"
        else:
            reason = "DefUseDependency"
        groups.append(FixGroup(fs, reason, sum(f.cost for f in fs),
                               fs[0].order_key))
    groups.sort(key=lambda g: g.order_key)
    return groups


def reachability_filter(fixes: list[Fix], reached: set[int]) -> tuple[list[Fix], list[Fix]]:
    """Split fixes into (kept, excluded) by anchor coverage.

    Deletions/modifications are excluded when their statement was never
    executed; insertions only when their target block's entry is
    unreached.
    """
    kept, excluded = [], []
    for f in fixes:
        (kept if f.reach_id in reached else excluded).append(f)
    return kept, excluded


def minimize(pe: Node, fixes: list[Fix], suite: Suite,
             max_card: int = DEFAULT_MAX_FIXES, *,
             prune: bool = True, group: bool = True,
             budget: int = DEFAULT_BUDGET) -> MinimalFixSet:
    """Smallest passing group subset within the cardinality cutoff.

    Subsets are tried by (cardinality, total edit cost, anchor order);
    the first passing subset wins.  Raises InvalidCandidate when even the
    full fix set fails the suite, ExceedsThreshold when no subset within
    max_card passes.
    """
    if max_card < 1:
        raise ValueError("max_card must be >= 1")
    all_pass, outcomes = run_tests(pe, suite, budget)
    trials = 1
    if all_pass:
        return MinimalFixSet([], 0, 0, trials)
    if fixes:
        ok, _ = run_tests(apply_fixes(pe, fixes), suite, budget)
        trials += 1
        if not ok:
            raise InvalidCandidate("applying the full fix set does not pass the suite")
    else:
        raise InvalidCandidate("no fixes available and the program fails")

    reached: set[int] = set()
    for o in outcomes:
        reached |= o.reached

    if group:
        groups = group_fixes(fixes, pe)
    else:
        groups = [FixGroup([f], None, f.cost, f.order_key)
                  for f in sorted(fixes, key=lambda f: f.order_key)]

    deferred_ids = frozenset()
    if prune:
        _, excluded = reachability_filter(fixes, reached)
        excluded_set = {id(f) for f in excluded}
        # a group is deferred only if every member anchor is unreached
        deferred_ids = frozenset(
            idx for idx, g in enumerate(groups)
            if all(id(f) in excluded_set for f in g.fixes))

    def attempt(subset: tuple[int, ...]) -> bool:
        members = [f for idx in subset for f in groups[idx].fixes]
        members.sort(key=lambda f: f.order_key)
        ok, _ = run_tests(apply_fixes(pe, members), suite, budget)
        return ok

    indices = range(len(groups))
    for card in range(1, min(max_card, len(groups)) + 1):
        level = sorted(
            itertools.combinations(indices, card),
            key=lambda c: (sum(groups[i].cost for i in c),
                           tuple(groups[i].order_key for i in c)))
        found: Optional[tuple[int, ...]] = None
        pending: list[tuple[int, ...]] = []
        for subset in level:
            if deferred_ids and any(i in deferred_ids for i in subset):
                pending.append(subset)
                continue
            trials += 1
            if attempt(subset):
                found = subset
                break
        # deferred subsets collected so far precede `found`; the earliest
        # passing one wins, keeping parity with unpruned enumeration
        for subset in pending:
            trials += 1
            if attempt(subset):
                found = subset
                break
        if found is not None:
            members = [f for idx in found for f in groups[idx].fixes]
            members.sort(key=lambda f: f.order_key)
            return MinimalFixSet(members, len(found),
                                 sum(groups[i].cost for i in found), trials)
    raise ExceedsThreshold(
        f"no passing subset within cardinality {max_card} ({trials} trials)")
