"""MiniImp: grammar, ASTs, printing, control-flow signatures, binarization."""

from .ast import (
    ALL_KINDS,
    BIN_OPS,
    BNode,
    CONTROL_KINDS,
    EPSILON,
    Node,
    Span,
    UN_OPS,
    binarize,
    binop,
    bnode_count,
    boollit,
    clone,
    decl,
    entry_block_stmts,
    entry_func,
    entry_params,
    intlit,
    param_name,
    param_type,
    rename_variables,
    renumber,
    strlit,
    structural_equal,
    unop,
    var,
    var_names,
)
from .cf import CF_SYMBOLS, CfSignature, cf_signature, is_balanced
from .lexer import tokenize
from .parser import parse, parse_statement
from .printer import expr_text, fragment, pretty_print

__all__ = [
    "ALL_KINDS", "BIN_OPS", "BNode", "CF_SYMBOLS", "CONTROL_KINDS", "EPSILON",
    "CfSignature", "Node", "Span", "UN_OPS", "binarize", "binop",
    "bnode_count", "boollit", "cf_signature", "clone", "decl",
    "entry_block_stmts", "entry_func", "entry_params", "expr_text",
    "fragment", "intlit", "is_balanced", "param_name", "param_type", "parse",
    "parse_statement", "pretty_print", "rename_variables", "renumber",
    "strlit", "structural_equal", "tokenize", "unop", "var", "var_names",
]
