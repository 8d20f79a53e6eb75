"""Independent brute-force oracles used by the tests.

These deliberately avoid the algorithms they check: tree edit distance
via exhaustive valid-mapping enumeration, statement alignment via
explicit monotone matchings, assignment via permutations, minimization
via ascending power-set search.
"""

from __future__ import annotations

import itertools

from minifix.interp import run_tests
from minifix.lang.ast import Node
from minifix.repair import apply_fixes


def _preorder(root: Node) -> list[Node]:
    out, stack = [], [root]
    while stack:
        n = stack.pop()
        out.append(n)
        stack.extend(reversed(n.children))
    return out


def ted_bruteforce(a: Node, b: Node) -> int:
    """Minimum cost over all valid tree mappings (one-to-one, ancestor-
    and left-right-order preserving); unit costs."""
    na, nb = _preorder(a), _preorder(b)
    la = [n.label() for n in na]
    lb = [n.label() for n in nb]

    def ancestry(nodes):
        anc = [[False] * len(nodes) for _ in nodes]
        index = {id(n): i for i, n in enumerate(nodes)}

        def mark(node, chain):
            i = index[id(node)]
            for c in chain:
                anc[c][i] = True
            for child in node.children:
                mark(child, chain + [i])

        mark(nodes[0], [])
        return anc

    anc_a, anc_b = ancestry(na), ancestry(nb)
    n_a, n_b = len(na), len(nb)
    best = n_a + n_b  # empty mapping

    def rec(i: int, pairs: list[tuple[int, int]], used_b: set[int], cost: int):
        nonlocal best
        # optimistic completion: remaining a-nodes map for free, insertions
        # cannot go below nb - (k + remaining)
        k = len(pairs)
        remaining = n_a - i
        lower = cost + max(0, n_b - k - remaining)
        if lower >= best:
            return
        if i == n_a:
            total = cost + (n_b - k)
            best = min(best, total)
            return
        for j in range(n_b):
            if j in used_b:
                continue
            ok = True
            for pi, pj in pairs:
                if anc_a[pi][i] != anc_b[pj][j]:
                    ok = False
                    break
                if not anc_a[pi][i] and (anc_b[j][pj] or not pj < j):
                    ok = False
                    break
            if not ok:
                continue
            relabel = 0 if la[i] == lb[j] else 1
            pairs.append((i, j))
            used_b.add(j)
            rec(i + 1, pairs, used_b, cost + relabel)
            pairs.pop()
            used_b.remove(j)
        # leave node i unmapped (deletion)
        rec(i + 1, pairs, used_b, cost + 1)

    rec(0, [], set(), 0)
    return best


def align_bruteforce(match_cost: list[list[int]],
                     e_sizes: list[int], c_sizes: list[int]) -> int:
    """Minimum alignment cost over all explicit monotone matchings."""
    m, n = len(e_sizes), len(c_sizes)
    best = sum(e_sizes) + sum(c_sizes)
    for k in range(1, min(m, n) + 1):
        for e_idx in itertools.combinations(range(m), k):
            for c_idx in itertools.combinations(range(n), k):
                cost = sum(match_cost[i][j] for i, j in zip(e_idx, c_idx))
                cost += sum(e_sizes[i] for i in range(m) if i not in e_idx)
                cost += sum(c_sizes[j] for j in range(n) if j not in c_idx)
                best = min(best, cost)
    return best


def assignment_bruteforce(dist) -> float:
    """Minimum-total-cost injection of rows into columns (rows <= cols)."""
    n_rows, n_cols = len(dist), len(dist[0]) if len(dist) else 0
    if n_rows == 0:
        return 0.0
    return min(sum(dist[r][c] for r, c in enumerate(cols))
               for cols in itertools.permutations(range(n_cols), n_rows))


def minimize_bruteforce(pe: Node, groups, suite, budget: int,
                        max_card: int | None = None) -> int | None:
    """Smallest passing group-subset cardinality by ascending power-set
    search (no pruning, no ordering shortcuts); None if nothing passes."""
    limit = len(groups) if max_card is None else min(max_card, len(groups))
    for card in range(1, limit + 1):
        for combo in itertools.combinations(range(len(groups)), card):
            fixes = [f for idx in combo for f in groups[idx].fixes]
            ok, _ = run_tests(apply_fixes(pe, fixes), suite, budget)
            if ok:
                return card
    return None
