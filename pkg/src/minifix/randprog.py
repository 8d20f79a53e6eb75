"""Seeded random MiniImp programs and generic trees for property tests.

Generated programs are syntactically valid (pretty-print and re-parse
cleanly) but not necessarily executable; they exercise every construct
of the grammar.
"""

from __future__ import annotations

import random

from .lang.ast import Node, renumber

_NAMES = ("a", "b", "c", "i", "j", "k", "n", "s", "t", "x", "y",
          "acc", "row", "col", "tmp", "cur", "res")
_ARITH = ("+", "-", "*", "/", "%")
_CMP = ("==", "!=", "<", "<=", ">", ">=")
_LOGIC = ("&&", "||")
_AOPS = ("=", "+=", "-=", "*=")
_STRS = ("X", "O", "", "ab", 'q"t', "li\nne", "ta\tb", "back\\slash")


class ProgramGenerator:
    def __init__(self, rng: random.Random):
        self.rng = rng

    def program(self, max_stmts: int = 6) -> Node:
        rng = self.rng
        params = []
        for name in rng.sample(_NAMES, rng.randint(0, 2)):
            ty = rng.choice((None, "int", "bool", "str", "int[]"))
            params.append(Node("Param", name if ty is None else f"{name}:{ty}"))
        body = Node("Block", None, self.stmts(rng.randint(1, max_stmts), depth=0))
        fn = Node("FuncDecl", rng.choice(("main", "solve", "run")), params + [body])
        return renumber(Node("Program", None, [fn]), 0)

    def stmts(self, count: int, depth: int) -> list[Node]:
        return [self.stmt(depth) for _ in range(count)]

    def stmt(self, depth: int) -> Node:
        rng = self.rng
        choices = ["decl", "assign", "print", "expr"]
        if depth < 2:
            choices += ["if", "while", "for"]
        if depth > 0:
            choices.append("return")
        kind = rng.choice(choices)
        if kind == "decl":
            kids = [Node("Var", rng.choice(_NAMES))]
            if rng.random() < 0.7:
                kids.append(self.expr(0))
            return Node("Decl", None, kids)
        if kind == "assign":
            return Node("Assign", rng.choice(_AOPS), [self.lvalue(), self.expr(0)])
        if kind == "print":
            return Node("Print", None, [self.expr(0)])
        if kind == "return":
            kids = [self.expr(0)] if rng.random() < 0.6 else []
            return Node("Return", None, kids)
        if kind == "expr":
            return Node("Call", rng.choice(("len", "tostr", "array")), [self.expr(1)])
        if kind == "if":
            kids = [self.expr(1), self.block(depth + 1)]
            if rng.random() < 0.5:
                inner = self.stmt(depth + 1) if rng.random() < 0.2 else None
                if inner is not None and inner.kind == "If":
                    kids.append(Node("Else", None, [inner]))
                else:
                    kids.append(Node("Else", None, [self.block(depth + 1)]))
            return Node("If", None, kids)
        if kind == "while":
            return Node("While", None, [self.expr(1), self.block(depth + 1)])
        init = Node("Epsilon") if self.rng.random() < 0.2 else \
            Node("Decl", None, [Node("Var", rng.choice(_NAMES)), self.expr(2)])
        cond = Node("Epsilon") if rng.random() < 0.2 else self.expr(1)
        step = Node("Epsilon") if rng.random() < 0.2 else \
            Node("Assign", rng.choice(_AOPS), [self.lvalue(), self.expr(2)])
        return Node("For", None, [init, cond, step, self.block(depth + 1)])

    def block(self, depth: int) -> Node:
        return Node("Block", None, self.stmts(self.rng.randint(0, 3), depth))

    def lvalue(self) -> Node:
        rng = self.rng
        if rng.random() < 0.15:
            return Node("Index", None, [Node("Var", rng.choice(_NAMES)), self.expr(2)])
        return Node("Var", rng.choice(_NAMES))

    def expr(self, depth: int) -> Node:
        rng = self.rng
        if depth >= 3 or rng.random() < 0.35:
            return self.leaf()
        roll = rng.random()
        if roll < 0.55:
            op = rng.choice(_ARITH + _CMP + _LOGIC)
            return Node(f"BinOp({op})", None,
                        [self.expr(depth + 1), self.expr(depth + 1)])
        if roll < 0.7:
            return Node(f"UnOp({rng.choice(('!', '-'))})", None, [self.expr(depth + 1)])
        if roll < 0.8:
            return Node("Index", None,
                        [Node("Var", rng.choice(_NAMES)), self.expr(depth + 1)])
        if roll < 0.9:
            name = rng.choice(("len", "tostr", "array"))
            return Node("Call", name, [self.expr(depth + 1)])
        return self.leaf()

    def leaf(self) -> Node:
        rng = self.rng
        roll = rng.random()
        if roll < 0.45:
            return Node("Var", rng.choice(_NAMES))
        if roll < 0.7:
            return Node("IntLit", str(rng.randint(0, 99)))
        if roll < 0.85:
            return Node("BoolLit", rng.choice(("true", "false")))
        return Node("StrLit", rng.choice(_STRS))


def random_program(rng: random.Random, max_stmts: int = 6) -> Node:
    return ProgramGenerator(rng).program(max_stmts)


def random_tree(rng: random.Random, n_nodes: int,
                kinds: tuple[str, ...] = ("a", "b", "c"),
                payloads: tuple = (None, "1", "2")) -> Node:
    """Generic ordered labeled tree (for tree-edit-distance oracles)."""
    root = Node(rng.choice(kinds), rng.choice(payloads))
    nodes = [root]
    for _ in range(n_nodes - 1):
        child = Node(rng.choice(kinds), rng.choice(payloads))
        parent = rng.choice(nodes)
        parent.children.insert(rng.randint(0, len(parent.children)), child)
        nodes.append(child)
    return renumber(root, 0)
