"""Recursive-descent parser for MiniImp.

Accepts the full ``func name(params) { ... }`` form and, as a
convenience, a bare statement list (Program whose children are the
statements directly).
"""

from __future__ import annotations

from typing import Optional

from ..errors import ParseError
from .ast import Node, Span, renumber
from .lexer import Token, tokenize

_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)

_ASSIGN_OPS = ("=", "+=", "-=", "*=")


def parse(source: str) -> Node:
    """Parse MiniImp source into a Program Ast.

    Raises ParseError with the offending line/column on malformed input.
    Node ids are assigned in preorder starting at 0.
    """
    return _Parser(tokenize(source)).parse_program()


def parse_statement(source: str) -> Node:
    """Parse a single statement (testing convenience)."""
    p = _Parser(tokenize(source))
    stmt = p.statement()
    p.expect_eof()
    return renumber(stmt, 0)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, tok: Token, message: str) -> ParseError:
        shown = tok.text if tok.kind != "eof" else "end of input"
        return ParseError(tok.line, tok.col, f"{message} (found {shown!r})")

    def expect_sym(self, sym: str) -> Token:
        tok = self.next()
        if not tok.is_sym(sym):
            raise self.fail(tok, f"expected {sym!r}")
        return tok

    def expect_kw(self, word: str) -> Token:
        tok = self.next()
        if not tok.is_kw(word):
            raise self.fail(tok, f"expected keyword {word!r}")
        return tok

    def expect_ident(self) -> Token:
        tok = self.next()
        if tok.kind != "ident":
            raise self.fail(tok, "expected identifier")
        return tok

    def expect_eof(self) -> None:
        tok = self.peek()
        if tok.kind != "eof":
            raise self.fail(tok, "expected end of input")

    @staticmethod
    def span(start: Token, end: Token) -> Span:
        return Span(start.line, start.col, end.line, end.end_col)

    @staticmethod
    def point(tok: Token) -> Span:
        return Span(tok.line, tok.col, tok.line, tok.col)

    # -- grammar -----------------------------------------------------------

    def parse_program(self) -> Node:
        first = self.peek()
        if first.is_kw("func"):
            fn = self.func_decl()
            self.expect_eof()
            program = Node("Program", None, [fn], span=fn.span)
        else:
            stmts = []
            while self.peek().kind != "eof":
                stmts.append(self.statement())
            last = self.peek()
            program = Node("Program", None, stmts,
                           span=self.span(first, last) if stmts else self.point(first))
        return renumber(program, 0)

    def func_decl(self) -> Node:
        start = self.expect_kw("func")
        name = self.expect_ident()
        self.expect_sym("(")
        params = []
        if not self.peek().is_sym(")"):
            params.append(self.param())
            while self.peek().is_sym(","):
                self.next()
                params.append(self.param())
        self.expect_sym(")")
        body = self.block()
        return Node("FuncDecl", name.text, params + [body],
                    span=Span(start.line, start.col, body.span.end_line, body.span.end_col))

    def param(self) -> Node:
        name = self.expect_ident()
        end = name
        payload = name.text
        if self.peek().is_sym(":"):
            self.next()
            ty, end = self.type_name()
            payload = f"{name.text}:{ty}"
        return Node("Param", payload, span=self.span(name, end))

    def type_name(self) -> tuple[str, Token]:
        tok = self.next()
        if tok.is_kw("int"):
            if self.peek().is_sym("["):
                self.next()
                end = self.expect_sym("]")
                return "int[]", end
            return "int", tok
        if tok.is_kw("bool"):
            return "bool", tok
        if tok.is_kw("str"):
            return "str", tok
        raise self.fail(tok, "expected type")

    def block(self) -> Node:
        start = self.expect_sym("{")
        stmts = []
        while not self.peek().is_sym("}"):
            if self.peek().kind == "eof":
                raise self.fail(self.peek(), "unclosed block")
            stmts.append(self.statement())
        end = self.expect_sym("}")
        return Node("Block", None, stmts, span=self.span(start, end))

    def statement(self) -> Node:
        tok = self.peek()
        if tok.is_kw("var"):
            return self.decl()
        if tok.is_kw("if"):
            return self.if_stmt()
        if tok.is_kw("while"):
            return self.while_stmt()
        if tok.is_kw("for"):
            return self.for_stmt()
        if tok.is_kw("return"):
            return self.return_stmt()
        if tok.is_kw("print"):
            return self.print_stmt()
        return self.assign_or_exprstmt()

    def decl(self, consume_semi: bool = True) -> Node:
        start = self.expect_kw("var")
        name = self.expect_ident()
        v = Node("Var", name.text, span=self.span(name, name))
        kids = [v]
        end_tok = name
        if self.peek().is_sym("="):
            self.next()
            init = self.expression()
            kids.append(init)
        if consume_semi:
            end_tok = self.expect_sym(";")
        node = Node("Decl", None, kids)
        last = kids[-1].span
        node.span = Span(start.line, start.col,
                         max(last.end_line, end_tok.line),
                         end_tok.end_col if consume_semi else last.end_col)
        return node

    def assign_or_exprstmt(self) -> Node:
        expr = self.expression()
        tok = self.peek()
        if tok.kind == "symbol" and tok.text in _ASSIGN_OPS:
            node = self.finish_assign(expr)
            end = self.expect_sym(";")
            node.span = Span(expr.span.line, expr.span.col, end.line, end.end_col)
            return node
        end = self.expect_sym(";")
        expr.span = Span(expr.span.line, expr.span.col, end.line, end.end_col)
        return expr

    def finish_assign(self, lhs: Node) -> Node:
        op_tok = self.next()
        if lhs.kind != "Var" and not (lhs.kind == "Index" and lhs.children[0].kind == "Var"):
            raise self.fail(op_tok, "left side of assignment must be a variable or index")
        rhs = self.expression()
        return Node("Assign", op_tok.text, [lhs, rhs],
                    span=Span(lhs.span.line, lhs.span.col, rhs.span.end_line, rhs.span.end_col))

    def if_stmt(self) -> Node:
        start = self.expect_kw("if")
        self.expect_sym("(")
        cond = self.expression()
        self.expect_sym(")")
        then = self.block()
        kids = [cond, then]
        end_span = then.span
        if self.peek().is_kw("else"):
            else_tok = self.next()
            if self.peek().is_kw("if"):
                inner: Node = self.if_stmt()
            else:
                inner = self.block()
            els = Node("Else", None, [inner],
                       span=Span(else_tok.line, else_tok.col,
                                 inner.span.end_line, inner.span.end_col))
            kids.append(els)
            end_span = els.span
        return Node("If", None, kids,
                    span=Span(start.line, start.col, end_span.end_line, end_span.end_col))

    def while_stmt(self) -> Node:
        start = self.expect_kw("while")
        self.expect_sym("(")
        cond = self.expression()
        self.expect_sym(")")
        body = self.block()
        return Node("While", None, [cond, body],
                    span=Span(start.line, start.col, body.span.end_line, body.span.end_col))

    def for_stmt(self) -> Node:
        start = self.expect_kw("for")
        self.expect_sym("(")
        # init: decl or assign, both consuming the separating ';'
        if self.peek().is_sym(";"):
            semi = self.next()
            init = Node("Epsilon", span=self.point(semi))
        elif self.peek().is_kw("var"):
            init = self.decl(consume_semi=True)
        else:
            lhs = self.expression()
            init = self.finish_assign(lhs)
            self.expect_sym(";")
        if self.peek().is_sym(";"):
            semi = self.next()
            cond = Node("Epsilon", span=self.point(semi))
        else:
            cond = self.expression()
            self.expect_sym(";")
        if self.peek().is_sym(")"):
            step = Node("Epsilon", span=self.point(self.peek()))
        else:
            lhs = self.expression()
            step = self.finish_assign(lhs)
        self.expect_sym(")")
        body = self.block()
        return Node("For", None, [init, cond, step, body],
                    span=Span(start.line, start.col, body.span.end_line, body.span.end_col))

    def return_stmt(self) -> Node:
        start = self.expect_kw("return")
        kids = []
        if not self.peek().is_sym(";"):
            kids.append(self.expression())
        end = self.expect_sym(";")
        return Node("Return", None, kids,
                    span=Span(start.line, start.col, end.line, end.end_col))

    def print_stmt(self) -> Node:
        start = self.expect_kw("print")
        self.expect_sym("(")
        arg = self.expression()
        self.expect_sym(")")
        end = self.expect_sym(";")
        return Node("Print", None, [arg],
                    span=Span(start.line, start.col, end.line, end.end_col))

    # -- expressions ---------------------------------------------------------

    def expression(self, level: int = 0) -> Node:
        if level >= len(_BINARY_LEVELS):
            return self.unary()
        lhs = self.expression(level + 1)
        ops = _BINARY_LEVELS[level]
        while True:
            tok = self.peek()
            if tok.kind == "symbol" and tok.text in ops:
                self.next()
                rhs = self.expression(level + 1)
                lhs = Node(f"BinOp({tok.text})", None, [lhs, rhs],
                           span=Span(lhs.span.line, lhs.span.col,
                                     rhs.span.end_line, rhs.span.end_col))
            else:
                return lhs

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "symbol" and tok.text in ("!", "-"):
            self.next()
            operand = self.unary()
            return Node(f"UnOp({tok.text})", None, [operand],
                        span=Span(tok.line, tok.col,
                                  operand.span.end_line, operand.span.end_col))
        return self.primary()

    def primary(self) -> Node:
        tok = self.next()
        if tok.kind == "int":
            return Node("IntLit", str(int(tok.text)), span=self.span(tok, tok))
        if tok.kind == "string":
            return Node("StrLit", tok.text, span=self.span(tok, tok))
        if tok.is_kw("true") or tok.is_kw("false"):
            return Node("BoolLit", tok.text, span=self.span(tok, tok))
        if tok.is_sym("("):
            inner = self.expression()
            self.expect_sym(")")
            return inner
        if tok.kind == "ident":
            if self.peek().is_sym("("):
                self.next()
                args = []
                if not self.peek().is_sym(")"):
                    args.append(self.expression())
                    while self.peek().is_sym(","):
                        self.next()
                        args.append(self.expression())
                end = self.expect_sym(")")
                return Node("Call", tok.text, args, span=self.span(tok, end))
            if self.peek().is_sym("["):
                self.next()
                idx = self.expression()
                end = self.expect_sym("]")
                base = Node("Var", tok.text, span=self.span(tok, tok))
                return Node("Index", None, [base, idx], span=self.span(tok, end))
            return Node("Var", tok.text, span=self.span(tok, tok))
        raise self.fail(tok, "expected expression")
