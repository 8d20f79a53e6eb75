"""MiniImp pretty-printer.

parse(pretty_print(p)) reproduces p's kinds, payloads and shape exactly;
expressions are re-parenthesized from precedence, not from the source.
"""

from __future__ import annotations

from .ast import Node, binop_tag

_INDENT = "    "

_PRECEDENCE = {
    "||": 1, "&&": 2,
    "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "%": 6,
}
_UNARY_LEVEL = 7

_STMT_KINDS = frozenset({"Assign", "Decl", "If", "While", "For", "Return", "Print"})


def pretty_print(node: Node) -> str:
    """Render a Program, statement, or expression as source text."""
    if node.kind in ("Program", "FuncDecl", "Block") or node.kind in _STMT_KINDS:
        lines: list[str] = []
        _emit(node, 0, lines)
        return "\n".join(lines) + "\n"
    return expr_text(node)


def fragment(node: Node) -> str:
    """One-line rendering without the trailing semicolon (for messages)."""
    if node.kind == "For":
        return f"for ({_for_header(node)})"
    if node.kind in ("If", "While"):
        return expr_text(node.children[0])
    if node.kind in _STMT_KINDS or node.kind == "Epsilon":
        return _inline_stmt(node)
    return expr_text(node)


def _emit(node: Node, depth: int, lines: list[str]) -> None:
    pad = _INDENT * depth
    kind = node.kind
    if kind == "Program":
        for child in node.children:
            _emit(child, depth, lines)
    elif kind == "FuncDecl":
        params = ", ".join(_param_text(c) for c in node.children[:-1])
        lines.append(f"{pad}func {node.payload}({params}) {{")
        _emit_block_body(node.children[-1], depth + 1, lines)
        lines.append(f"{pad}}}")
    elif kind == "Block":
        lines.append(f"{pad}{{")
        _emit_block_body(node, depth + 1, lines)
        lines.append(f"{pad}}}")
    elif kind == "If":
        _emit_if(node, depth, lines, prefix=f"{pad}if")
    elif kind == "While":
        lines.append(f"{pad}while ({expr_text(node.children[0])}) {{")
        _emit_block_body(node.children[1], depth + 1, lines)
        lines.append(f"{pad}}}")
    elif kind == "For":
        lines.append(f"{pad}for ({_for_header(node)}) {{")
        _emit_block_body(node.children[3], depth + 1, lines)
        lines.append(f"{pad}}}")
    elif kind == "Epsilon":
        pass  # placeholder, only meaningful inside a for-header
    else:
        lines.append(pad + _inline_stmt(node) + ";")


def _emit_block_body(block: Node, depth: int, lines: list[str]) -> None:
    for stmt in block.children:
        _emit(stmt, depth, lines)


def _emit_if(node: Node, depth: int, lines: list[str], prefix: str) -> None:
    pad = _INDENT * depth
    lines.append(f"{prefix} ({expr_text(node.children[0])}) {{")
    _emit_block_body(node.children[1], depth + 1, lines)
    if len(node.children) == 3:
        inner = node.children[2].children[0]
        if inner.kind == "If":
            _emit_if(inner, depth, lines, prefix=f"{pad}}} else if")
        else:
            lines.append(f"{pad}}} else {{")
            _emit_block_body(inner, depth + 1, lines)
            lines.append(f"{pad}}}")
    else:
        lines.append(f"{pad}}}")


def _param_text(param: Node) -> str:
    if param.payload and ":" in param.payload:
        name, ty = param.payload.split(":", 1)
        return f"{name}: {ty}"
    return param.payload or ""


def _for_header(node: Node) -> str:
    init, cond, step = node.children[0], node.children[1], node.children[2]
    part_init = "" if init.kind == "Epsilon" else _inline_stmt(init)
    part_cond = "" if cond.kind == "Epsilon" else expr_text(cond)
    part_step = "" if step.kind == "Epsilon" else _inline_stmt(step)
    return f"{part_init}; {part_cond}; {part_step}"


def _inline_stmt(node: Node) -> str:
    kind = node.kind
    if kind == "Decl":
        name = node.children[0].payload
        if len(node.children) == 2:
            return f"var {name} = {expr_text(node.children[1])}"
        return f"var {name}"
    if kind == "Assign":
        return f"{expr_text(node.children[0])} {node.payload} {expr_text(node.children[1])}"
    if kind == "Return":
        if node.children:
            return f"return {expr_text(node.children[0])}"
        return "return"
    if kind == "Print":
        return f"print({expr_text(node.children[0])})"
    if kind == "Epsilon":
        return ""
    return expr_text(node)  # expression statement


def expr_text(node: Node) -> str:
    return _expr(node, 0)


def _expr(node: Node, ctx_level: int) -> str:
    kind = node.kind
    op = binop_tag(kind)
    if op is not None and kind.startswith("BinOp"):
        level = _PRECEDENCE[op]
        lhs = _expr(node.children[0], level)
        rhs = _expr(node.children[1], level + 1)  # left-associative
        text = f"{lhs} {op} {rhs}"
        return f"({text})" if level < ctx_level else text
    if op is not None:  # unary
        operand = _expr(node.children[0], _UNARY_LEVEL)
        text = f"{op}{operand}"
        return f"({text})" if _UNARY_LEVEL < ctx_level else text
    if kind == "Var":
        return node.payload or ""
    if kind == "IntLit":
        return node.payload or "0"
    if kind == "BoolLit":
        return node.payload or "false"
    if kind == "StrLit":
        return '"' + _escape(node.payload or "") + '"'
    if kind == "Call":
        args = ", ".join(_expr(a, 0) for a in node.children)
        return f"{node.payload}({args})"
    if kind == "Index":
        return f"{_expr(node.children[0], _UNARY_LEVEL + 1)}[{_expr(node.children[1], 0)}]"
    if kind == "Epsilon":
        return ""
    raise ValueError(f"cannot render {kind} as an expression")


def _escape(text: str) -> str:
    return (text.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\t", "\\t"))
