import random

import numpy as np
import pytest
from oracles import align_bruteforce, assignment_bruteforce

from minifix.align import (
    align_blocks,
    alpha_conversion,
    basic_blocks,
    discrepancies,
    match_statements,
    match_variables,
    ordered_vars,
    usage_sets,
    usage_vector,
)
from minifix.embed import pacv, pacv_distance, tree_edit_distance, MINIIMP_ALPHABET
from minifix.errors import CfMismatch
from minifix.lang import binarize, cf_signature, clone, parse, pretty_print, rename_variables
from minifix.lang.printer import fragment
from minifix.randprog import random_program

TOGGLE_E = """
func main(n: int) {
    for (var i = 0; i < n; i += 1) {
        var row = "";
        var ch = i % 2 == 0;
        for (var j = 0; j < n; j += 1) {
            if (ch) {
                row += "X";
            } else {
                row += "O";
            }
            ch = !ch;
        }
        print(row);
    }
}
"""

TOGGLE_C = """
func main(size: int) {
    for (var r = 0; r < size; r += 1) {
        var line = "";
        var blackWhite = r % 2 == 0;
        for (var c = 0; c < size; c += 1) {
            if (blackWhite) {
                line += "X";
            } else {
                line += "O";
            }
            blackWhite = !blackWhite;
        }
        print(line);
    }
}
"""


# -- usage sets --------------------------------------------------------------

def test_usage_set_counts_featuring_statements():
    p = parse("var x = 1; y = x + 2; print(x); z = 3;")
    sets = usage_sets(p)
    assert len(sets["x"]) == 2  # the read in y's assignment and the print
    assert len(sets["y"]) == 1
    assert len(sets["z"]) == 1


def test_declared_but_unused_variable_has_empty_usage_set():
    p = parse("var lonely; x = 1;")
    assert usage_sets(p)["lonely"] == []


def test_loop_counter_only_in_header_is_included():
    p = parse("func main() { for (var i = 0; i < 3; i += 1) { print(9); } }")
    sets = usage_sets(p)
    assert len(sets["i"]) == 1
    assert sets["i"][0].role == "for_header"


def test_branch_condition_counts_as_usage():
    p = parse("func main(f: bool) { if (f) { print(1); } }")
    assert [u.role for u in usage_sets(p)["f"]] == ["if_cond"]


def test_usage_vector_of_empty_set_is_empty():
    assert usage_vector([], 1).heights == {}


def test_usage_vector_single_statement_equals_statement_pacv():
    p = parse("x = y + 1; print(x);")
    units = usage_sets(p)["y"]
    assert len(units) == 1
    expected = pacv(binarize(units[0].tree), 1, MINIIMP_ALPHABET)
    assert usage_vector(units, 1).heights == expected.heights


def test_usage_vector_concatenates_per_statement():
    p = parse("x = y + 1; x = y + 1;")
    units = usage_sets(p)["y"]
    assert len(units) == 2
    single = pacv(binarize(units[0].tree), 1, MINIIMP_ALPHABET)
    double = usage_vector(units, 1)
    assert double.heights == {i: h + h for i, h in single.heights.items()}


# -- variable matching -------------------------------------------------------

def test_alpha_recovers_bijective_renaming():
    rng = random.Random(42)
    p = parse(TOGGLE_E)
    names = ordered_vars(p)
    target = names[1:] + names[:1]
    perm = dict(zip(names, target))
    renamed = clone(p)
    rename_variables(renamed, perm)
    mapping = match_variables(p, renamed, 1)
    assert not mapping.unmatched_c and not mapping.unmatched_e
    recovered = {c: e for c, e, _ in mapping.pairs}
    assert recovered == {perm[v]: v for v in names}
    assert all(d == 0.0 for _, _, d in mapping.pairs)


def test_alpha_matches_toggle_variables_across_programs():
    mapping = match_variables(parse(TOGGLE_E), parse(TOGGLE_C), 1)
    pairs = {c: e for c, e, _ in mapping.pairs}
    assert pairs["blackWhite"] == "ch"
    assert pairs["line"] == "row"
    assert pairs["size"] == "n"  # parameters pair positionally


def test_alpha_conversion_renames_program_text():
    pac, mapping = alpha_conversion(parse(TOGGLE_E), parse(TOGGLE_C), 1)
    text = pretty_print(pac)
    assert "blackWhite" not in text and "ch" in text
    assert cf_signature(pac) == cf_signature(parse(TOGGLE_C))


def test_alpha_outlier_lands_unmatched():
    pe = parse("func main(n: int) { var a = n + 1; print(a); }")
    # same shape plus an accumulator with a wildly different usage profile
    pc = parse("""
func main(m: int) {
    var b = m + 1;
    var acc = ((((1 + 2) + 3) + 4) + 5) * ((6 + 7) * (8 + 9));
    acc *= acc + acc * acc - acc;
    acc -= acc * (acc + acc) + acc;
    acc += len(tostr(acc + acc * acc));
    print(b);
}
""")
    mapping = match_variables(pe, pc, 1)
    assert "acc" in mapping.unmatched_c
    pairs = {c: e for c, e, _ in mapping.pairs}
    assert pairs.get("b") == "a"


def test_alpha_fresh_names_avoid_collisions():
    pe = parse("func main() { var keep = 1; print(keep); }")
    pc = parse("""
func main() {
    var keep = 1;
    var keep_x = (((1 * 2) * 3) * 4) * (5 * 6 * 7 * (8 * 9 * 10));
    keep_x *= keep_x * keep_x + keep_x;
    keep_x -= keep_x * keep_x * keep_x;
    keep_x += keep_x * (keep_x + keep_x * keep_x);
    print(keep);
}
""")
    pac, mapping = alpha_conversion(pe, pc, 1)
    for v in mapping.unmatched_c:
        assert v not in ordered_vars(pe) or v not in pretty_print(pac)
    names = set(ordered_vars(pac))
    assert len(names) == len(set(ordered_vars(pc)))  # injective renaming


def test_assignment_equals_bruteforce_on_small_sets():
    rng = random.Random(17)
    checked = 0
    while checked < 25:
        pe = random_program(rng)
        pc = random_program(rng)
        ve, vc = ordered_vars(pe), ordered_vars(pc)
        if not (1 <= len(ve) <= 5 and 1 <= len(vc) <= 5):
            continue
        use_e, use_c = usage_sets(pe), usage_sets(pc)
        he = {v: usage_vector(use_e[v], 1) for v in ve}
        hc = {v: usage_vector(use_c[v], 1) for v in vc}
        small, large = (vc, ve) if len(vc) <= len(ve) else (ve, vc)
        hsmall, hlarge = (hc, he) if len(vc) <= len(ve) else (he, hc)
        dist = [[pacv_distance(hsmall[a], hlarge[b]) for b in large] for a in small]
        checked += 1
        assert _injection_total(pe, pc) == \
            pytest.approx(assignment_bruteforce(dist), abs=1e-9)


def _injection_total(pe, pc):
    """Total distance of the optimal injection, via the module under test
    but without the Tukey step (reconstructed from the returned pairs plus
    any pairs the fence removed)."""
    from minifix.align import _min_cost_injection
    ve, vc = ordered_vars(pe), ordered_vars(pc)
    use_e, use_c = usage_sets(pe), usage_sets(pc)
    he = {v: usage_vector(use_e[v], 1) for v in ve}
    hc = {v: usage_vector(use_c[v], 1) for v in vc}
    small, large, sm, lg = (vc, ve, hc, he) if len(vc) <= len(ve) else (ve, vc, he, hc)
    dist = np.array([[pacv_distance(sm[a], lg[b]) for b in large] for a in small])
    pairs = _min_cost_injection(dist)
    return float(sum(dist[r, c] for r, c in pairs))


def test_min_cost_injection_scipy_branch_matches_bruteforce():
    from minifix.align import _min_cost_injection
    rng = random.Random(31)
    for rows, cols in ((3, 9), (5, 7), (7, 7)):
        dist = np.array([[rng.random() for _ in range(cols)] for _ in range(rows)])
        picked = _min_cost_injection(dist)
        total = sum(dist[r, c] for r, c in picked)
        assert total == pytest.approx(
            assignment_bruteforce(dist.tolist()), abs=1e-9)


# -- basic blocks ------------------------------------------------------------

def test_straight_line_program_is_one_block():
    blocks = basic_blocks(parse("x = 1; y = 2; print(x + y);"))
    assert len(blocks) == 1
    assert blocks[0].kind == "run" and len(blocks[0].units) == 3


def test_if_else_block_decomposition():
    p = parse("s1 = 1; if (c) { s2 = 2; } else { s3 = 3; } s4 = 4;")
    blocks = basic_blocks(p)
    shapes = [(b.kind, [fragment(u.tree) for u in b.units]) for b in blocks]
    assert shapes == [
        ("run", ["s1 = 1"]),
        ("header", ["c"]),
        ("run", ["s2 = 2"]),
        ("run", ["s3 = 3"]),
        ("run", ["s4 = 4"]),
    ]


def test_empty_bodies_yield_empty_but_present_blocks():
    p = parse("if (c) { } else { }")
    blocks = basic_blocks(p)
    assert [(b.kind, len(b.units)) for b in blocks] == [
        ("run", 0), ("header", 1), ("run", 0), ("run", 0), ("run", 0)]


def test_block_shape_depends_only_on_cf():
    rng = random.Random(6)
    seen = 0
    programs = [random_program(rng) for _ in range(60)]
    by_cf = {}
    for p in programs:
        by_cf.setdefault(cf_signature(p), []).append(p)
    for group in by_cf.values():
        for a in group:
            for b in group:
                ba, bb = basic_blocks(a), basic_blocks(b)
                assert len(ba) == len(bb)
                assert [x.kind for x in ba] == [x.kind for x in bb]
                seen += 1
    assert seen > 0


def test_align_blocks_identity_and_mismatch():
    p = parse(TOGGLE_E)
    pairs = align_blocks(p, parse(TOGGLE_E))
    assert all(be.order == bc.order for be, bc in pairs)
    with pytest.raises(CfMismatch):
        align_blocks(p, parse("x = 1;"))


# -- statement matching ------------------------------------------------------

def _run_blocks(src_e, src_c):
    be = basic_blocks(parse(src_e))[0]
    bc = basic_blocks(parse(src_c))[0]
    return be, bc


def test_identical_blocks_produce_no_discrepancies():
    be, bc = _run_blocks("a = 1; b = 2;", "a = 1; b = 2;")
    assert match_statements(be, bc) == []


def test_pure_insertion_detected():
    be, bc = _run_blocks("a = 1; b = 2;", "a = 1; x = 9; b = 2;")
    out = match_statements(be, bc)
    assert len(out) == 1
    d = out[0]
    assert d.e_unit is None and fragment(d.c_unit.tree) == "x = 9"
    assert d.e_pos == 1


def test_pure_deletion_detected():
    be, bc = _run_blocks("a = 1; junk = 0; b = 2;", "a = 1; b = 2;")
    out = match_statements(be, bc)
    assert len(out) == 1
    assert out[0].c_unit is None and fragment(out[0].e_unit.tree) == "junk = 0"


def test_modification_detected_with_ted():
    be, bc = _run_blocks("a = 1;", "a = 2;")
    out = match_statements(be, bc)
    assert len(out) == 1
    assert out[0].ted == 1


def test_matching_cost_equals_bruteforce():
    rng = random.Random(55)
    stmts = ["a = 1;", "b = a + 2;", 'print("x");', "c = b * b;",
             "var d = 0;", "a += 1;", 'print(tostr(a));']
    for _ in range(40):
        src_e = " ".join(rng.choice(stmts) for _ in range(rng.randint(0, 5)))
        src_c = " ".join(rng.choice(stmts) for _ in range(rng.randint(0, 5)))
        be, bc = _run_blocks(src_e or "x = 0;", src_c or "x = 0;")
        eu, cu = be.units, bc.units
        cost_matrix = [[tree_edit_distance(e.tree, c.tree) for c in cu] for e in eu]
        expected = align_bruteforce(cost_matrix,
                                    [u.size() for u in eu],
                                    [u.size() for u in cu])
        got_pairs = match_statements(be, bc)
        got_cost = sum(d.ted for d in got_pairs if d.e_unit and d.c_unit) \
            + sum(d.e_unit.size() for d in got_pairs if d.c_unit is None) \
            + sum(d.c_unit.size() for d in got_pairs if d.e_unit is None)
        assert got_cost == expected


def test_discrepancies_on_same_cf_programs():
    ds = discrepancies(parse(TOGGLE_E), parse(TOGGLE_E))
    assert ds == []
