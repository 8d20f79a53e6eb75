"""Rendering a minimal fix set as student feedback.

Five cumulative information levels: (1) change count, (2) line numbers,
(3) the problematic statement, (4) the problematic sub-expression,
(5) its new value.  A machine-readable payload with full detail is always
produced alongside the leveled human text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lang.ast import Node, binop_tag, structural_equal
from .lang.printer import fragment
from .repair import Fix, MinimalFixSet


@dataclass
class FeedbackItem:
    line: int
    kind: str
    original_fragment: Optional[str]
    replacement_fragment: Optional[str]
    message: str


def translate(fm: MinimalFixSet, level: int = 5) -> tuple[str, list[FeedbackItem]]:
    """Header plus one item per fix, worded for the requested level."""
    if not 1 <= level <= 5:
        raise ValueError("feedback level must be in 1..5")
    n = fm.cardinality
    noun = "change" if n == 1 else "changes"
    fixes = sorted(fm.fixes, key=lambda f: (f.line, f.order_key))
    header = f"The program requires {n} {noun}" + (":" if fixes and level >= 2 else ".")
    items = [_item(f, level) for f in fixes]
    return header, items


def to_json_payload(fm: MinimalFixSet, items: list[FeedbackItem]) -> dict:
    return {
        "change_count": fm.cardinality,
        "items": [
            {
                "line": it.line,
                "kind": it.kind,
                "original": it.original_fragment,
                "replacement": it.replacement_fragment,
            }
            for it in items
        ],
    }


def _item(fix: Fix, level: int) -> FeedbackItem:
    original = fragment(fix.source) if fix.source is not None else None
    replacement = fragment(fix.payload) if fix.payload is not None else None
    message = "" if level < 2 else _message(fix, level, original, replacement)
    return FeedbackItem(fix.line, fix.kind, original, replacement, message)


def _message(fix: Fix, level: int, original: Optional[str],
             replacement: Optional[str]) -> str:
    line = fix.line
    if fix.kind == "insertion":
        if level >= 5:
            return f"At line {line}, add {replacement}."
        if level >= 3:
            return f"At line {line}, add a statement."
        return f"Addition needed at line {line}."
    if fix.kind == "deletion":
        if level >= 3:
            return f"At line {line}, remove {original}."
        return f"Removal needed at line {line}."
    # modification
    if level == 2:
        return f"Change needed at line {line}."
    if level == 3:
        return f"In {original} on line {line}, make a change."
    olds, news = zip(*[_pair_fragments(x, y) for x, y in fix.ops]) \
        if fix.ops else ((original,), (replacement,))
    if len(olds) == 1:
        if level >= 5:
            return f"In {original} on line {line}, change {olds[0]} to {news[0]}."
        return f"In {original} on line {line}, change {olds[0]}."
    if level >= 5:
        return f"On line {line}, replace {original} with {replacement}."
    return f"In {original} on line {line}, change {', '.join(olds)}."


def _pair_fragments(x: Optional[Node], y: Optional[Node]) -> tuple[str, str]:
    """Tightest rendering of a differing subtree pair: bare operator text
    when only the operator changed, expression text otherwise."""
    if x is None or y is None:
        return (fragment(x) if x is not None else "",
                fragment(y) if y is not None else "")
    op_x, op_y = binop_tag(x.kind), binop_tag(y.kind)
    if op_x and op_y and len(x.children) == len(y.children) \
            and all(structural_equal(cx, cy) for cx, cy in zip(x.children, y.children)):
        return op_x, op_y
    if x.kind == "Assign" and y.kind == "Assign" and x.payload != y.payload \
            and all(structural_equal(cx, cy) for cx, cy in zip(x.children, y.children)):
        return x.payload or "=", y.payload or "="
    return fragment(x), fragment(y)
