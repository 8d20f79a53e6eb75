"""Synthetic exercise corpus: the checkerboard printing problem.

main(n) prints an n-by-n board of alternating X/O characters, row by
row, with an X in the top-left corner.  Seven solution families cover
six distinct control-flow shapes; each family exposes naming, loop-style,
condition-form, and accumulation knobs, so a seeded generator yields
hundreds of distinct correct programs.
"""

from __future__ import annotations

import random
from pathlib import Path

from .interp import Suite, TestCase, run_tests
from .lang.parser import parse

_PAIRS = (("i", "j"), ("r", "c"), ("a", "b"), ("row", "col"), ("p", "q"), ("u", "v"))
_ROWVARS = ("row", "line", "out", "s", "buf", "text")
_PARAMS = ("n", "size", "m", "dim")
_TOGGLES = ("flip", "black", "turn", "odd")


def expected_board(n: int) -> str:
    rows = []
    for i in range(n):
        rows.append("".join("X" if (i + j) % 2 == 0 else "O" for j in range(n)))
    return "".join(r + "\n" for r in rows)


def make_suite(ns: tuple[int, ...] = (1, 2, 5, 8)) -> Suite:
    tests = [TestCase(f"board_{n}", [n], expected_board(n)) for n in ns]
    return Suite("main", tests)


def _loop(var: str, bound: str, rng: random.Random) -> str:
    style = rng.randrange(3)
    if style == 0:
        return f"var {var} = 0; {var} < {bound}; {var} += 1"
    if style == 1:
        return f"var {var} = 0; {var} <= {bound} - 1; {var} += 1"
    return f"var {var} = 1; {var} <= {bound}; {var} += 1"


def _loop_base(header: str) -> int:
    return 1 if "= 1;" in header else 0


def _parity_cond(expr: str, want_even: bool, rng: random.Random) -> str:
    # (expr) % 2 is always 0 or 1 here (operands are non-negative).
    if rng.random() < 0.5:
        return f"{expr} % 2 == {0 if want_even else 1}"
    return f"{expr} % 2 != {1 if want_even else 0}"


def _acc(rowvar: str, ch: str, rng: random.Random) -> str:
    if rng.random() < 0.6:
        return f'{rowvar} += "{ch}";'
    return f'{rowvar} = {rowvar} + "{ch}";'


def _if_else_append(rowvar: str, cond: str, first: str, second: str,
                    pad: str, rng: random.Random) -> str:
    return (f"{pad}if ({cond}) {{\n"
            f"{pad}    {_acc(rowvar, first, rng)}\n"
            f"{pad}}} else {{\n"
            f"{pad}    {_acc(rowvar, second, rng)}\n"
            f"{pad}}}")


def _family_nested(rng: random.Random, outer_kw: str, inner_kw: str) -> str:
    """Families A/B/G: two nested loops with an if/else on cell parity."""
    n = rng.choice(_PARAMS)
    i, j = rng.choice([p for p in _PAIRS if n not in p])
    row = rng.choice([r for r in _ROWVARS if r not in (i, j, n)])
    hi = _loop(i, n, rng)
    hj = _loop(j, n, rng)
    base = _loop_base(hi) + _loop_base(hj)
    cell = f"({i} + {j})" if rng.random() < 0.5 else f"({j} + {i})"
    want_even = base % 2 == 0
    swap = rng.random() < 0.3
    cond = _parity_cond(cell, want_even != swap, rng)
    first, second = ("O", "X") if swap else ("X", "O")
    extra = f"    var steps = 0;\n" if rng.random() < 0.2 else ""

    def loop_open(kw: str, header: str, pad: str) -> tuple[str, str]:
        if kw == "for":
            return f"{pad}for ({header}) {{", ""
        init, cond_part, step = header.split("; ")
        return (f"{pad}{init};\n{pad}while ({cond_part}) {{",
                f"{pad}    {step};")

    outer_open, outer_step = loop_open(outer_kw, hi, "    ")
    inner_open, inner_step = loop_open(inner_kw, hj, "        ")
    body = _if_else_append(row, cond, first, second, "            ", rng)
    inner_tail = f"\n{inner_step}" if inner_step else ""
    outer_tail = f"\n{outer_step}" if outer_step else ""
    return (f"func main({n}: int) {{\n"
            f"{extra}"
            f"{outer_open}\n"
            f'        var {row} = "";\n'
            f"{inner_open}\n"
            f"{body}{inner_tail}\n"
            f"        }}\n"
            f"        print({row});{outer_tail}\n"
            f"    }}\n"
            f"}}\n")


def _family_no_else(rng: random.Random) -> str:
    """Family C: default character overwritten by a single if."""
    n = rng.choice(_PARAMS)
    i, j = rng.choice([p for p in _PAIRS if n not in p])
    row = rng.choice([r for r in _ROWVARS if r not in (i, j, n)])
    ch = rng.choice(["ch", "cell", "mark"])
    hi, hj = _loop(i, n, rng), _loop(j, n, rng)
    base = _loop_base(hi) + _loop_base(hj)
    flip = rng.random() < 0.5
    default, override = ("O", "X") if not flip else ("X", "O")
    cond = _parity_cond(f"({i} + {j})", (base % 2 == 0) != flip, rng)
    return (f"func main({n}: int) {{\n"
            f"    for ({hi}) {{\n"
            f'        var {row} = "";\n'
            f"        for ({hj}) {{\n"
            f'            var {ch} = "{default}";\n'
            f"            if ({cond}) {{\n"
            f'                {ch} = "{override}";\n'
            f"            }}\n"
            f"            {row} += {ch};\n"
            f"        }}\n"
            f"        print({row});\n"
            f"    }}\n"
            f"}}\n")


def _family_row_branch(rng: random.Random) -> str:
    """Family D: branch on row parity, two inner loops."""
    n = rng.choice(_PARAMS)
    i, j = rng.choice([p for p in _PAIRS if n not in p])
    row = rng.choice([r for r in _ROWVARS if r not in (i, j, n)])
    hi, hj = _loop(i, n, rng), _loop(j, n, rng)
    bi, bj = _loop_base(hi), _loop_base(hj)
    cond_row = _parity_cond(f"{i}", bi % 2 == 0, rng)
    cond_even = _parity_cond(f"{j}", bj % 2 == 0, rng)

    def inner(first: str, second: str, pad: str) -> str:
        return (f"{pad}for ({hj}) {{\n"
                + _if_else_append(row, cond_even, first, second, pad + "    ", rng)
                + f"\n{pad}}}")

    return (f"func main({n}: int) {{\n"
            f"    for ({hi}) {{\n"
            f'        var {row} = "";\n'
            f"        if ({cond_row}) {{\n"
            f"{inner('X', 'O', '            ')}\n"
            f"        }} else {{\n"
            f"{inner('O', 'X', '            ')}\n"
            f"        }}\n"
            f"        print({row});\n"
            f"    }}\n"
            f"}}\n")


def _family_two_rows(rng: random.Random) -> str:
    """Family E: prebuild both row strings, then print alternately."""
    n = rng.choice(_PARAMS)
    i, j = rng.choice([p for p in _PAIRS if n not in p])
    ra = rng.choice(["rowA", "even", "first"])
    rb = rng.choice(["rowB", "odd", "second"])
    hj, hi = _loop(j, n, rng), _loop(i, n, rng)
    bj, bi = _loop_base(hj), _loop_base(hi)
    cond_j = _parity_cond(f"{j}", bj % 2 == 0, rng)
    cond_i = _parity_cond(f"{i}", bi % 2 == 0, rng)
    return (f"func main({n}: int) {{\n"
            f'    var {ra} = "";\n'
            f'    var {rb} = "";\n'
            f"    for ({hj}) {{\n"
            f"        if ({cond_j}) {{\n"
            f"            {_acc(ra, 'X', rng)}\n"
            f"            {_acc(rb, 'O', rng)}\n"
            f"        }} else {{\n"
            f"            {_acc(ra, 'O', rng)}\n"
            f"            {_acc(rb, 'X', rng)}\n"
            f"        }}\n"
            f"    }}\n"
            f"    for ({hi}) {{\n"
            f"        if ({cond_i}) {{\n"
            f"            print({ra});\n"
            f"        }} else {{\n"
            f"            print({rb});\n"
            f"        }}\n"
            f"    }}\n"
            f"}}\n")


def _family_toggle(rng: random.Random) -> str:
    """Family F: a boolean toggled per cell (same CF shape as family A)."""
    n = rng.choice(_PARAMS)
    i, j = rng.choice([p for p in _PAIRS if n not in p])
    row = rng.choice([r for r in _ROWVARS if r not in (i, j, n)])
    tog = rng.choice(_TOGGLES)
    hi, hj = _loop(i, n, rng), _loop(j, n, rng)
    bi = _loop_base(hi)
    cond_i = _parity_cond(f"{i}", bi % 2 == 0, rng)
    return (f"func main({n}: int) {{\n"
            f"    for ({hi}) {{\n"
            f'        var {row} = "";\n'
            f"        var {tog} = {cond_i};\n"
            f"        for ({hj}) {{\n"
            f"            if ({tog}) {{\n"
            f"                {_acc(row, 'X', rng)}\n"
            f"            }} else {{\n"
            f"                {_acc(row, 'O', rng)}\n"
            f"            }}\n"
            f"            {tog} = !{tog};\n"
            f"        }}\n"
            f"        print({row});\n"
            f"    }}\n"
            f"}}\n")


_FAMILIES = (
    lambda rng: _family_nested(rng, "for", "for"),     # A
    lambda rng: _family_nested(rng, "while", "while"),  # B
    _family_no_else,                                    # C
    _family_row_branch,                                 # D
    _family_two_rows,                                   # E
    lambda rng: _family_nested(rng, "while", "for"),    # G
    _family_toggle,                                     # F
)


def synth_corpus(size: int, seed: int,
                 suite: Suite | None = None) -> list[tuple[str, str]]:
    """Deterministic list of (program_id, source); every program passes
    the suite (verified at generation time)."""
    suite = suite or make_suite()
    rng = random.Random(seed)
    out: list[tuple[str, str]] = []
    seen: set[str] = set()
    idx = 0
    while len(out) < size:
        family = _FAMILIES[idx % len(_FAMILIES)]
        idx += 1
        source = family(rng)
        if source in seen and rng.random() < 0.8:
            continue  # prefer variety; occasional duplicates are fine
        ok, _ = run_tests(parse(source), suite)
        if not ok:
            raise AssertionError("generator produced an incorrect solution:\n" + source)
        seen.add(source)
        out.append((f"prog_{len(out):04d}", source))
    return out


def write_corpus(directory: str | Path, size: int, seed: int,
                 suite: Suite | None = None) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, source in synth_corpus(size, seed, suite):
        path = directory / f"{name}.mini"
        path.write_text(source)
        paths.append(path)
    return paths
