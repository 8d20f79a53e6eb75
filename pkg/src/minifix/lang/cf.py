"""Control-flow signatures: the nested start/end symbol sequence of a program."""

from __future__ import annotations

from .ast import Node

CF_SYMBOLS = (
    "If_start", "If_end", "Else_start", "Else_end",
    "While_start", "While_end", "For_start", "For_end",
)

CfSignature = tuple  # of symbol strings


def cf_signature(node: Node) -> CfSignature:
    """Preorder emission of start/end symbols for each control construct."""
    out: list[str] = []
    _walk(node, out)
    return tuple(out)


def _walk(node: Node, out: list[str]) -> None:
    kind = node.kind
    if kind == "If":
        out.append("If_start")
        _walk(node.children[1], out)  # condition holds no control
        out.append("If_end")
        if len(node.children) == 3:
            out.append("Else_start")
            _walk(node.children[2].children[0], out)
            out.append("Else_end")
    elif kind == "While":
        out.append("While_start")
        _walk(node.children[1], out)
        out.append("While_end")
    elif kind == "For":
        out.append("For_start")
        _walk(node.children[3], out)
        out.append("For_end")
    else:
        for child in node.children:
            _walk(child, out)


def is_balanced(sig: CfSignature) -> bool:
    """Stack scan: every X_start matched by a properly nested X_end."""
    stack: list[str] = []
    for sym in sig:
        name, _, edge = sym.rpartition("_")
        if edge == "start":
            stack.append(name)
        elif not stack or stack.pop() != name:
            return False
    return not stack
