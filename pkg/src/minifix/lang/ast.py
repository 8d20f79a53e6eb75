"""MiniImp abstract syntax trees.

A program is an ordered labeled tree of Node objects.  The label kind
alphabet is finite and fixed (operator tags are part of the kind, e.g.
``BinOp(+)``); identifier and literal text lives in the payload and never
affects pattern identity, only tree-edit relabel costs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

BIN_OPS = ("||", "&&", "==", "!=", "<", "<=", ">", ">=", "+", "-", "*", "/", "%")
UN_OPS = ("!", "-")
ASSIGN_OPS = ("=", "+=", "-=", "*=")

BASE_KINDS = (
    "Program", "FuncDecl", "Param", "Block", "Assign", "Decl", "If", "Else",
    "While", "For", "Return", "Print", "Call", "Index", "Var", "IntLit",
    "BoolLit", "StrLit",
)

EPSILON = "Epsilon"

#: Every label kind a Node may carry, Epsilon included.
ALL_KINDS = (EPSILON,) + BASE_KINDS \
    + tuple(f"BinOp({op})" for op in BIN_OPS) \
    + tuple(f"UnOp({op})" for op in UN_OPS)

CONTROL_KINDS = frozenset({"If", "While", "For"})

#: Statement kinds that can appear as direct children of a Block.
SIMPLE_STMT_KINDS = frozenset({"Assign", "Decl", "Return", "Print"})


@dataclass
class Span:
    """Source range, 1-based lines and columns, end-inclusive."""

    line: int = 0
    col: int = 0
    end_line: int = 0
    end_col: int = 0

    def contains(self, other: "Span") -> bool:
        if self.line == 0 or other.line == 0:
            return True  # unknown spans do not constrain
        start_ok = (self.line, self.col) <= (other.line, other.col)
        end_ok = (other.end_line, other.end_col) <= (self.end_line, self.end_col)
        return start_ok and end_ok


UNKNOWN_SPAN = Span()


@dataclass
class Node:
    kind: str
    payload: Optional[str] = None
    children: list["Node"] = field(default_factory=list)
    node_id: int = -1
    span: Span = field(default_factory=Span)

    def label(self) -> tuple[str, Optional[str]]:
        return (self.kind, self.payload)

    def preorder(self) -> Iterator["Node"]:
        stack = [self]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))

    def size(self) -> int:
        return sum(1 for _ in self.preorder())

    def __repr__(self) -> str:  # concise, for test failures
        p = f" {self.payload!r}" if self.payload is not None else ""
        return f"<{self.kind}{p} #{self.node_id} /{len(self.children)}>"


def structural_equal(a: Optional[Node], b: Optional[Node]) -> bool:
    """Equality on kind, payload and shape; ids and spans are ignored."""
    if a is None or b is None:
        return a is b
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x.kind != y.kind or x.payload != y.payload:
            return False
        if len(x.children) != len(y.children):
            return False
        stack.extend(zip(x.children, y.children))
    return True


def clone(node: Node, id_map: Optional[dict[int, Node]] = None) -> Node:
    """Deep copy preserving node_ids and spans.

    When id_map is given it is filled with old node_id -> new node, which
    lets callers edit the copy at anchors recorded against the original.
    """
    copy = Node(node.kind, node.payload, [], node.node_id, node.span)
    if id_map is not None and node.node_id >= 0:
        id_map[node.node_id] = copy
    copy.children = [clone(c, id_map) for c in node.children]
    return copy


_fresh_counter = [10_000_000]


def renumber(root: Node, start: Optional[int] = None) -> Node:
    """Assign fresh sequential node_ids in preorder; returns root."""
    i = _fresh_counter[0] if start is None else start
    for n in root.preorder():
        n.node_id = i
        i += 1
    if start is None:
        _fresh_counter[0] = i
    return root


def var_names(node: Node) -> set[str]:
    """All variable names referenced below node (Var payloads and Params)."""
    names = set()
    for n in node.preorder():
        if n.kind == "Var" and n.payload:
            names.add(n.payload)
        elif n.kind == "Param" and n.payload:
            names.add(param_name(n.payload))
    return names


def param_name(payload: str) -> str:
    return payload.split(":", 1)[0]


def param_type(payload: str) -> Optional[str]:
    if ":" in payload:
        return payload.split(":", 1)[1]
    return None


def rename_variables(root: Node, mapping: dict[str, str]) -> None:
    """In-place simultaneous renaming of Var payloads and Param names."""
    for n in root.preorder():
        if n.kind == "Var" and n.payload in mapping:
            n.payload = mapping[n.payload]
        elif n.kind == "Param" and n.payload is not None:
            name = param_name(n.payload)
            if name in mapping:
                ty = param_type(n.payload)
                n.payload = mapping[name] if ty is None else f"{mapping[name]}:{ty}"


def entry_func(program: Node) -> Optional[Node]:
    """The single FuncDecl of a program, or None for bare-statement form."""
    if program.children and program.children[0].kind == "FuncDecl":
        return program.children[0]
    return None


def entry_params(program: Node) -> list[Node]:
    fn = entry_func(program)
    if fn is None:
        return []
    return [c for c in fn.children if c.kind == "Param"]


def entry_block_stmts(program: Node) -> list[Node]:
    """Top-level statement list (FuncDecl body, or the bare children)."""
    fn = entry_func(program)
    if fn is None:
        return program.children
    return fn.children[-1].children


# ---------------------------------------------------------------------------
# Binary form (left-child/right-sibling) used by the pattern embeddings.
# ---------------------------------------------------------------------------

@dataclass
class BNode:
    label: str
    left: Optional["BNode"] = None
    right: Optional["BNode"] = None
    height: int = 0  # within the whole binary tree, leaves = 1


def binarize(root: Node) -> BNode:
    """LCRS encoding: left = first child, right = next sibling.

    Node count and the multiset of label kinds are preserved exactly;
    payloads are dropped (patterns are over kinds only).
    """
    broot = BNode(root.kind)
    # Iterative to survive long sibling chains (width becomes depth).
    stack = [(root, broot)]
    while stack:
        n, b = stack.pop()
        prev: Optional[BNode] = None
        for child in n.children:
            bc = BNode(child.kind)
            if prev is None:
                b.left = bc
            else:
                prev.right = bc
            prev = bc
            stack.append((child, bc))
    _compute_heights(broot)
    return broot


def _compute_heights(root: BNode) -> None:
    order: list[BNode] = []
    stack = [root]
    while stack:
        n = stack.pop()
        order.append(n)
        if n.left is not None:
            stack.append(n.left)
        if n.right is not None:
            stack.append(n.right)
    for n in reversed(order):
        h = 0
        if n.left is not None:
            h = n.left.height
        if n.right is not None:
            h = max(h, n.right.height)
        n.height = h + 1


def bnode_count(root: Optional[BNode]) -> int:
    if root is None:
        return 0
    count = 0
    stack = [root]
    while stack:
        n = stack.pop()
        count += 1
        if n.left is not None:
            stack.append(n.left)
        if n.right is not None:
            stack.append(n.right)
    return count


# ---------------------------------------------------------------------------
# Construction helpers (tests, generators, fix payloads).
# ---------------------------------------------------------------------------

def var(name: str) -> Node:
    return Node("Var", name)


def intlit(value: int) -> Node:
    return Node("IntLit", str(value))


def boollit(value: bool) -> Node:
    return Node("BoolLit", "true" if value else "false")


def strlit(text: str) -> Node:
    return Node("StrLit", text)


def binop(op: str, lhs: Node, rhs: Node) -> Node:
    return Node(f"BinOp({op})", None, [lhs, rhs])


def unop(op: str, operand: Node) -> Node:
    return Node(f"UnOp({op})", None, [operand])


def assign(lhs: Node, rhs: Node, op: str = "=") -> Node:
    return Node("Assign", op, [lhs, rhs])


def decl(name: str, init: Optional[Node] = None) -> Node:
    kids = [var(name)]
    if init is not None:
        kids.append(init)
    return Node("Decl", None, kids)


def binop_tag(kind: str) -> Optional[str]:
    """The operator of a BinOp/UnOp kind string, else None."""
    if kind.startswith("BinOp(") or kind.startswith("UnOp("):
        return kind[kind.index("(") + 1:-1]
    return None
