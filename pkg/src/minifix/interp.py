"""Sandboxed MiniImp execution against test cases.

Programs run with a per-test step budget (statements plus control
predicate evaluations); every execution records the node_ids of executed
statements, control constructs, their predicates, and entered blocks,
which feeds reachability pruning.  Runtime faults (DivByZero,
IndexOutOfBounds, UninitializedRead, TypeMismatch) are outcomes, not
engine failures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .defaults import DEFAULT_BUDGET
from .lang.ast import Node, binop_tag, entry_block_stmts, entry_params, param_name

Value = Any  # int | bool | str | list[int]

_UNINIT = object()


@dataclass
class TestCase:
    __test__ = False  # not a pytest class despite the name

    name: str
    args: list[Value] = field(default_factory=list)
    expected_output: str = ""
    expected_return: Optional[Value] = None
    check_return: bool = False


@dataclass
class Suite:
    entry: str
    tests: list[TestCase]


@dataclass
class RunOutcome:
    status: str  # "Pass" | "WrongOutput" | "RuntimeError" | "Timeout"
    output: str
    steps_used: int
    reached: set[int]
    error_kind: Optional[str] = None  # DivByZero | IndexOutOfBounds | ...
    return_value: Optional[Value] = None

    @property
    def passed(self) -> bool:
        return self.status == "Pass"


class _Fault(Exception):
    def __init__(self, kind: str, message: str = ""):
        super().__init__(message or kind)
        self.kind = kind


class _Return(Exception):
    def __init__(self, value: Optional[Value]):
        self.value = value


class _Budget(Exception):
    pass


def canonical_text(value: Value) -> str:
    """The print form: decimal ints, true/false, raw strings, [a, b] arrays."""
    if type(value) is bool:
        return "true" if value else "false"
    if type(value) is int:
        return str(value)
    if type(value) is str:
        return value
    if type(value) is list:
        return "[" + ", ".join(canonical_text(v) for v in value) + "]"
    raise _Fault("TypeMismatch", f"unprintable value {value!r}")


def normalize_output(text: str, strip_trailing_ws: bool = True) -> str:
    """Comparison form: exact bytes after per-line trailing-space removal."""
    if not strip_trailing_ws:
        return text
    return "\n".join(line.rstrip() for line in text.split("\n"))


class _Machine:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self.reached: set[int] = set()
        self.chunks: list[str] = []

    def charge(self, node: Node) -> None:
        self.reached.add(node.node_id)
        self.steps += 1
        if self.steps > self.budget:
            raise _Budget()

    def touch(self, node: Node) -> None:
        self.reached.add(node.node_id)

    # -- statements ----------------------------------------------------------

    def exec_block(self, block: Node, env: dict) -> None:
        self.touch(block)
        for stmt in block.children:
            self.exec_stmt(stmt, env)

    def exec_stmt(self, stmt: Node, env: dict) -> None:
        kind = stmt.kind
        if kind == "Decl":
            self.charge(stmt)
            name = stmt.children[0].payload
            env[name] = self.eval(stmt.children[1], env) if len(stmt.children) == 2 else _UNINIT
        elif kind == "Assign":
            self.charge(stmt)
            self.exec_assign(stmt, env)
        elif kind == "Print":
            self.charge(stmt)
            self.chunks.append(canonical_text(self.eval(stmt.children[0], env)) + "\n")
        elif kind == "Return":
            self.charge(stmt)
            value = self.eval(stmt.children[0], env) if stmt.children else None
            raise _Return(value)
        elif kind == "If":
            self.touch(stmt)
            if self.predicate(stmt.children[0], env):
                self.exec_block(stmt.children[1], env)
            elif len(stmt.children) == 3:
                els = stmt.children[2]
                self.touch(els)
                inner = els.children[0]
                if inner.kind == "If":
                    self.exec_stmt(inner, env)
                else:
                    self.exec_block(inner, env)
        elif kind == "While":
            self.touch(stmt)
            while self.predicate(stmt.children[0], env):
                self.exec_block(stmt.children[1], env)
        elif kind == "For":
            self.touch(stmt)
            init, cond, step, body = stmt.children
            if init.kind != "Epsilon":
                self.exec_stmt(init, env)
            while self.predicate(cond, env, default=True):
                self.exec_block(body, env)
                if step.kind != "Epsilon":
                    self.exec_stmt(step, env)
        elif kind == "Epsilon":
            pass
        else:  # expression statement
            self.charge(stmt)
            self.eval(stmt, env)

    def predicate(self, cond: Node, env: dict, default: bool = False) -> bool:
        self.charge(cond)
        if cond.kind == "Epsilon":
            return default
        value = self.eval(cond, env)
        if type(value) is not bool:
            raise _Fault("TypeMismatch", "condition must be a boolean")
        return value

    def exec_assign(self, stmt: Node, env: dict) -> None:
        target, rhs_node = stmt.children
        op = stmt.payload or "="
        rhs = self.eval(rhs_node, env)
        if target.kind == "Var":
            name = target.payload
            if op == "=":
                env[name] = rhs
            else:
                env[name] = self.compound(name, self.read(name, env), op, rhs)
        else:  # Index lvalue
            arr = self.read(target.children[0].payload, env)
            if type(arr) is not list:
                raise _Fault("TypeMismatch", "indexed assignment needs an array")
            idx = self.index_value(target.children[1], arr, env)
            if op == "=":
                value = rhs
            else:
                value = self.compound("element", arr[idx], op, rhs)
            if type(value) is not int:
                raise _Fault("TypeMismatch", "arrays hold integers")
            arr[idx] = value

    def compound(self, name: str, cur: Value, op: str, rhs: Value) -> Value:
        if op == "+=":
            if type(cur) is int and type(rhs) is int:
                return cur + rhs
            if type(cur) is str and type(rhs) is str:
                return cur + rhs
            raise _Fault("TypeMismatch", f"{op} on {name}")
        if type(cur) is int and type(rhs) is int:
            if op == "-=":
                return cur - rhs
            if op == "*=":
                return cur * rhs
        raise _Fault("TypeMismatch", f"{op} on {name}")

    def read(self, name: str, env: dict) -> Value:
        value = env.get(name, _UNINIT)
        if value is _UNINIT:
            raise _Fault("UninitializedRead", f"read of uninitialized {name!r}")
        return value

    def index_value(self, idx_node: Node, arr: list, env: dict) -> int:
        idx = self.eval(idx_node, env)
        if type(idx) is not int:
            raise _Fault("TypeMismatch", "array index must be an integer")
        if idx < 0 or idx >= len(arr):
            raise _Fault("IndexOutOfBounds", f"index {idx} of array of length {len(arr)}")
        return idx

    # -- expressions -----------------------------------------------------------

    def eval(self, node: Node, env: dict) -> Value:
        kind = node.kind
        if kind == "IntLit":
            return int(node.payload)
        if kind == "BoolLit":
            return node.payload == "true"
        if kind == "StrLit":
            return node.payload or ""
        if kind == "Var":
            return self.read(node.payload, env)
        if kind == "Index":
            arr = self.read(node.children[0].payload, env)
            if type(arr) is not list:
                raise _Fault("TypeMismatch", "indexing a non-array")
            return arr[self.index_value(node.children[1], arr, env)]
        if kind == "Call":
            return self.call(node, env)
        op = binop_tag(kind)
        if op is None:
            raise _Fault("TypeMismatch", f"cannot evaluate {kind}")
        if kind.startswith("UnOp"):
            operand = self.eval(node.children[0], env)
            if op == "!":
                if type(operand) is bool:
                    return not operand
            elif type(operand) is int:
                return -operand
            raise _Fault("TypeMismatch", f"unary {op}")
        return self.binary(op, node, env)

    def binary(self, op: str, node: Node, env: dict) -> Value:
        lhs = self.eval(node.children[0], env)
        if op in ("||", "&&"):
            if type(lhs) is not bool:
                raise _Fault("TypeMismatch", f"{op} needs booleans")
            if op == "||" and lhs:
                return True
            if op == "&&" and not lhs:
                return False
            rhs = self.eval(node.children[1], env)
            if type(rhs) is not bool:
                raise _Fault("TypeMismatch", f"{op} needs booleans")
            return rhs
        rhs = self.eval(node.children[1], env)
        if op in ("==", "!="):
            if type(lhs) is not type(rhs):
                raise _Fault("TypeMismatch", "equality between different types")
            return (lhs == rhs) if op == "==" else (lhs != rhs)
        if op in ("<", "<=", ">", ">="):
            same_ints = type(lhs) is int and type(rhs) is int
            same_strs = type(lhs) is str and type(rhs) is str
            if not (same_ints or same_strs):
                raise _Fault("TypeMismatch", f"{op} needs two ints or two strings")
            return {"<": lhs < rhs, "<=": lhs <= rhs,
                    ">": lhs > rhs, ">=": lhs >= rhs}[op]
        if op == "+":
            if type(lhs) is int and type(rhs) is int:
                return lhs + rhs
            if type(lhs) is str and type(rhs) is str:
                return lhs + rhs
            raise _Fault("TypeMismatch", "+ needs two ints or two strings")
        if type(lhs) is not int or type(rhs) is not int:
            raise _Fault("TypeMismatch", f"{op} needs integers")
        if op == "-":
            return lhs - rhs
        if op == "*":
            return lhs * rhs
        if rhs == 0:
            raise _Fault("DivByZero", f"{op} by zero")
        # C-style truncation toward zero; % sign follows the dividend.
        quot = abs(lhs) // abs(rhs)
        if (lhs < 0) != (rhs < 0):
            quot = -quot
        if op == "/":
            return quot
        return lhs - quot * rhs

    def call(self, node: Node, env: dict) -> Value:
        name = node.payload
        args = [self.eval(a, env) for a in node.children]
        if name == "len" and len(args) == 1:
            if type(args[0]) in (str, list):
                return len(args[0])
            raise _Fault("TypeMismatch", "len() needs a string or array")
        if name == "array" and len(args) == 1:
            n = args[0]
            if type(n) is not int:
                raise _Fault("TypeMismatch", "array() needs an integer size")
            if n < 0:
                raise _Fault("IndexOutOfBounds", "negative array size")
            return [0] * n
        if name == "tostr" and len(args) == 1:
            if type(args[0]) is list:
                raise _Fault("TypeMismatch", "tostr() of an array")
            return canonical_text(args[0])
        raise _Fault("TypeMismatch", f"unknown function {name!r}")


def execute(program: Node, test: TestCase, budget: int = DEFAULT_BUDGET) -> RunOutcome:
    """Run one test; deterministic and side-effect free."""
    machine = _Machine(budget)
    env: dict = {}
    params = entry_params(program)
    status: Optional[str] = None
    error_kind: Optional[str] = None
    ret: Optional[Value] = None
    if len(params) != len(test.args):
        status, error_kind = "RuntimeError", "TypeMismatch"
    else:
        for p, a in zip(params, test.args):
            env[param_name(p.payload)] = list(a) if type(a) is list else a
        machine.touch(program)
        if program.children and program.children[0].kind == "FuncDecl":
            fn = program.children[0]
            machine.touch(fn)
            machine.touch(fn.children[-1])
        try:
            for stmt in entry_block_stmts(program):
                machine.exec_stmt(stmt, env)
        except _Return as r:
            ret = r.value
        except _Fault as f:
            status, error_kind = "RuntimeError", f.kind
        except _Budget:
            status = "Timeout"
    output = "".join(machine.chunks)
    if status is None:
        ok = normalize_output(output) == normalize_output(test.expected_output)
        if ok and test.check_return:
            ok = type(ret) is type(test.expected_return) and ret == test.expected_return
        status = "Pass" if ok else "WrongOutput"
    return RunOutcome(status, output, machine.steps, machine.reached,
                      error_kind, ret)


def run_tests(program: Node, suite: list[TestCase] | Suite,
              budget: int = DEFAULT_BUDGET) -> tuple[bool, list[RunOutcome]]:
    """Run the whole suite in order; all_pass iff every outcome passes."""
    tests = suite.tests if isinstance(suite, Suite) else suite
    if not tests:
        raise ValueError("test suite must not be empty")
    outcomes = [execute(program, t, budget) for t in tests]
    return all(o.passed for o in outcomes), outcomes


def coverage(program: Node, suite: list[TestCase] | Suite,
             budget: int = DEFAULT_BUDGET) -> set[int]:
    """Union of reached node_ids over the suite."""
    _, outcomes = run_tests(program, suite, budget)
    reached: set[int] = set()
    for o in outcomes:
        reached |= o.reached
    return reached


# -- suite files -----------------------------------------------------------

def load_suite(path: str | Path) -> Suite:
    data = json.loads(Path(path).read_text())
    tests = []
    for t in data["tests"]:
        has_ret = t.get("expected_return") is not None
        tests.append(TestCase(
            name=t["name"],
            args=list(t.get("args", [])),
            expected_output=t.get("expected_output", ""),
            expected_return=t.get("expected_return"),
            check_return=has_ret,
        ))
    return Suite(entry=data.get("entry", "main"), tests=tests)


def save_suite(suite: Suite, path: str | Path) -> None:
    data = {
        "entry": suite.entry,
        "tests": [
            {
                "name": t.name,
                "args": t.args,
                "expected_output": t.expected_output,
                **({"expected_return": t.expected_return} if t.check_return else {}),
            }
            for t in suite.tests
        ],
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n")
