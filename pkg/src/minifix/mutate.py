"""Seeded mutations for benchmark construction.

Mutations preserve the control-flow signature by design (expression and
operator edits, predicate flips, and insertion/deletion/reordering of
non-control statements only), so every mutant keeps its progenitor
inside the control-flow filter.  Mutants that still pass the suite are
discarded by the caller.
"""

from __future__ import annotations

import random
from typing import Optional

from .lang.ast import CONTROL_KINDS, Node, binop_tag, clone, renumber
from .lang.printer import pretty_print

_ARITH = ("+", "-", "*", "/", "%")
_CMP = ("==", "!=", "<", "<=", ">", ">=")
_LOGIC = ("&&", "||")
_AOPS = ("=", "+=", "-=", "*=")

MUTATION_KINDS = ("op_swap", "const_change", "predicate_flip",
                  "stmt_delete", "stmt_insert", "stmt_swap", "var_misuse")


def _op_class(op: str) -> Optional[tuple[str, ...]]:
    for cls in (_ARITH, _CMP, _LOGIC):
        if op in cls:
            return cls
    return None


def _blocks_with_simple_stmts(root: Node) -> list[Node]:
    out = []
    for n in root.preorder():
        if n.kind in ("Block", "Program") and any(
                c.kind not in CONTROL_KINDS and c.kind != "FuncDecl"
                for c in n.children):
            out.append(n)
    return out


def _simple_positions(block: Node) -> list[int]:
    return [i for i, c in enumerate(block.children)
            if c.kind not in CONTROL_KINDS and c.kind != "FuncDecl"]


def _var_names_in(root: Node) -> list[str]:
    seen: list[str] = []
    for n in root.preorder():
        if n.kind == "Var" and n.payload and n.payload not in seen:
            seen.append(n.payload)
    return seen


def _apply_one(root: Node, kind: str, rng: random.Random) -> Optional[str]:
    """Try one mutation in place; returns a description or None if the
    kind has no applicable site."""
    if kind == "op_swap":
        sites = []
        for n in root.preorder():
            op = binop_tag(n.kind)
            if op and n.kind.startswith("BinOp") and _op_class(op):
                sites.append(n)
            elif n.kind == "Assign":
                sites.append(n)
        if not sites:
            return None
        node = rng.choice(sites)
        if node.kind == "Assign":
            old = node.payload or "="
            node.payload = rng.choice([o for o in _AOPS if o != old])
            return f"aop {old} -> {node.payload}"
        old = binop_tag(node.kind)
        new = rng.choice([o for o in _op_class(old) if o != old])
        node.kind = f"BinOp({new})"
        return f"op {old} -> {new}"
    if kind == "const_change":
        sites = [n for n in root.preorder()
                 if n.kind in ("IntLit", "StrLit", "BoolLit")]
        if not sites:
            return None
        node = rng.choice(sites)
        old = node.payload
        if node.kind == "IntLit":
            value = int(node.payload)
            delta = rng.choice([-2, -1, 1, 2])
            node.payload = str(value + delta)
        elif node.kind == "StrLit":
            if node.payload == "X":
                node.payload = "O"
            elif node.payload == "O":
                node.payload = "X"
            else:
                node.payload = (node.payload or "") + "X"
        else:
            node.payload = "false" if node.payload == "true" else "true"
        return f"const {old!r} -> {node.payload!r}"
    if kind == "predicate_flip":
        sites = []
        for n in root.preorder():
            if n.kind in ("If", "While"):
                sites.append((n, 0))
            elif n.kind == "For" and n.children[1].kind != "Epsilon":
                sites.append((n, 1))
        if not sites:
            return None
        node, idx = rng.choice(sites)
        cond = node.children[idx]
        op = binop_tag(cond.kind)
        if op in _CMP and rng.random() < 0.7:
            flipped = {"==": "!=", "!=": "==", "<": ">=", ">=": "<",
                       ">": "<=", "<=": ">"}[op]
            cond.kind = f"BinOp({flipped})"
            return f"predicate {op} -> {flipped}"
        node.children[idx] = Node("UnOp(!)", None, [cond])
        return "predicate negated"
    if kind == "stmt_delete":
        blocks = _blocks_with_simple_stmts(root)
        if not blocks:
            return None
        block = rng.choice(blocks)
        pos = rng.choice(_simple_positions(block))
        removed = block.children.pop(pos)
        return f"deleted {removed.kind} statement"
    if kind == "stmt_insert":
        blocks = _blocks_with_simple_stmts(root)
        if not blocks:
            return None
        src_block = rng.choice(blocks)
        stmt = src_block.children[rng.choice(_simple_positions(src_block))]
        if stmt.kind == "Decl":  # re-declaring is rarely interesting
            stmt = clone(stmt.children[-1]) if len(stmt.children) > 1 else None
            if stmt is None:
                return None
            stmt = Node("Print", None, [stmt])
        else:
            stmt = clone(stmt)
        dst_block = rng.choice(_blocks_with_simple_stmts(root))
        pos = rng.randint(0, len(dst_block.children))
        dst_block.children.insert(pos, stmt)
        return f"inserted duplicate {stmt.kind} statement"
    if kind == "stmt_swap":
        sites = []
        for block in _blocks_with_simple_stmts(root):
            simple = _simple_positions(block)
            for a, b in zip(simple, simple[1:]):
                if b == a + 1:
                    sites.append((block, a))
        if not sites:
            return None
        block, a = rng.choice(sites)
        block.children[a], block.children[a + 1] = \
            block.children[a + 1], block.children[a]
        return "swapped adjacent statements"
    if kind == "var_misuse":
        names = _var_names_in(root)
        if len(names) < 2:
            return None
        sites = [n for n in root.preorder() if n.kind == "Var"]
        node = rng.choice(sites)
        old = node.payload
        node.payload = rng.choice([v for v in names if v != old])
        return f"var {old} -> {node.payload}"
    raise ValueError(f"unknown mutation kind {kind!r}")


def mutate(program: Node, rng: random.Random, count: int,
           max_attempts: int = 60) -> tuple[Node, list[str]]:
    """Apply `count` distinct-effect mutations to a copy of the program.

    Each mutation must change the pretty-printed source; raises if the
    attempt budget runs out (callers retry with fresh randomness).
    """
    mutant = renumber(clone(program))
    applied: list[str] = []
    before = pretty_print(mutant)
    attempts = 0
    while len(applied) < count:
        attempts += 1
        if attempts > max_attempts:
            raise RuntimeError("could not apply the requested mutations")
        kind = rng.choice(MUTATION_KINDS)
        snapshot = clone(mutant)
        desc = _apply_one(mutant, kind, rng)
        if desc is None or pretty_print(mutant) == before:
            mutant = snapshot
            continue
        before = pretty_print(mutant)
        applied.append(f"{kind}: {desc}")
    return mutant, applied
