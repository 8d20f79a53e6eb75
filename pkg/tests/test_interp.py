import pytest

from minifix.interp import (
    Suite,
    TestCase,
    coverage,
    execute,
    load_suite,
    normalize_output,
    run_tests,
    save_suite,
)
from minifix.lang import parse


def t(args=(), out="", ret=None, check=False, name="t"):
    return TestCase(name, list(args), out, ret, check)


def test_print_pass():
    assert execute(parse('print("X");'), t(out="X\n")).status == "Pass"


def test_budget_exhaustion_times_out():
    o = execute(parse("func main() { while (true) { } }"), t(), budget=500)
    assert o.status == "Timeout"
    assert o.steps_used <= 501
    assert not o.passed


def test_div_by_zero():
    o = execute(parse("x = 1 / 0;"), t())
    assert o.status == "RuntimeError" and o.error_kind == "DivByZero"


def test_mod_by_zero():
    assert execute(parse("x = 1 % 0;"), t()).error_kind == "DivByZero"


def test_truncating_division_semantics():
    src = "print(0 - 7 / 2); print((0 - 7) / 2); print((0 - 7) % 2); print(7 / 2);"
    o = execute(parse(src), t(out="-3\n-3\n-1\n3\n"))
    assert o.status == "Pass", o.output


def test_uninitialized_read_is_an_error():
    assert execute(parse("var x; y = x + 1;"), t()).error_kind == "UninitializedRead"
    assert execute(parse("y = nope + 1;"), t()).error_kind == "UninitializedRead"


def test_index_out_of_bounds():
    o = execute(parse("var a = array(2); a[2] = 1;"), t())
    assert o.error_kind == "IndexOutOfBounds"
    assert execute(parse("var a = array(0 - 1);"), t()).error_kind == "IndexOutOfBounds"


def test_type_mismatches():
    for src in ['x = 1 + "s";', "x = true + 1;", "if (1) { }",
                'x = "a" < 1;', "x = !1;", "y = len(3);", "z = missing(1);"]:
        assert execute(parse(src), t()).error_kind == "TypeMismatch", src


def test_short_circuit_avoids_fault():
    src = "var d = 0; if (false && 1 / d == 0) { } print(\"ok\");"
    assert execute(parse(src), t(out="ok\n")).status == "Pass"
    src = "var d = 0; if (true || 1 / d == 0) { print(\"ok\"); }"
    assert execute(parse(src), t(out="ok\n")).status == "Pass"


def test_string_ops_and_builtins():
    src = 'var s = "ab"; s += "cd"; print(s); print(len(s)); print(tostr(12) + "!");'
    assert execute(parse(src), t(out="abcd\n4\n12!\n")).status == "Pass"


def test_arrays_pass_by_binding():
    src = "func main(a: int[]) { a[0] += 5; print(a[0]); print(len(a)); }"
    o = execute(parse(src), t(args=[[1, 2, 3]], out="6\n3\n"))
    assert o.status == "Pass"


def test_return_value_checked_when_specified():
    src = "func main(n: int) { return n * 2; }"
    assert execute(parse(src), t(args=[3], ret=6, check=True)).status == "Pass"
    assert execute(parse(src), t(args=[3], ret=7, check=True)).status == "WrongOutput"
    # bool result must not satisfy an int expectation
    src2 = "func main() { return true; }"
    assert execute(parse(src2), t(ret=1, check=True)).status == "WrongOutput"


def test_arity_mismatch_is_a_runtime_error():
    o = execute(parse("func main(n: int) { }"), t(args=[]))
    assert o.status == "RuntimeError" and o.error_kind == "TypeMismatch"


def test_determinism():
    src = "func main(n: int) { var s = 0; for (var i = 0; i < n; i += 1) { s += i; } print(s); }"
    p = parse(src)
    a = execute(p, t(args=[9], out="36\n"))
    b = execute(p, t(args=[9], out="36\n"))
    assert (a.status, a.output, a.steps_used, a.reached) == \
           (b.status, b.output, b.steps_used, b.reached)
    assert a.status == "Pass"


def test_budget_monotonicity():
    src = "func main() { var s = 0; for (var i = 0; i < 50; i += 1) { s += 1; } print(s); }"
    p = parse(src)
    passing_budget = None
    for budget in (10, 50, 120, 200, 400):
        if execute(p, t(out="50\n"), budget=budget).passed:
            passing_budget = budget
            break
    assert passing_budget is not None
    for budget in (passing_budget, passing_budget + 1, passing_budget * 10):
        assert execute(p, t(out="50\n"), budget=budget).passed


def test_run_tests_order_and_all_pass():
    p = parse("func main(n: int) { print(n); }")
    suite = [t(args=[1], out="1\n", name="a"), t(args=[2], out="99\n", name="b")]
    all_pass, outcomes = run_tests(p, suite)
    assert not all_pass
    assert outcomes[0].passed and not outcomes[1].passed
    all_pass, _ = run_tests(p, [t(args=[5], out="5\n")])
    assert all_pass


def test_empty_suite_rejected():
    with pytest.raises(ValueError):
        run_tests(parse("x = 1;"), [])


def test_empty_output_test_against_empty_body():
    assert execute(parse("func main() { }"), t(out="")).status == "Pass"


def test_output_normalization_strips_trailing_spaces():
    assert normalize_output("a  \nb\t\n") == "a\nb\n"
    p = parse('print("a");')
    assert execute(p, t(out="a   \n")).status == "Pass"


def test_coverage_straight_line_covers_all_statements():
    p = parse("x = 1; y = 2; print(x + y);")
    reached = coverage(p, [t(out="3\n")])
    for stmt in p.children:
        assert stmt.node_id in reached


def test_coverage_excludes_dead_branch():
    p = parse('func main() { if (false) { print("dead"); } print("live"); }')
    reached = coverage(p, [t(out="live\n")])
    dead = next(n for n in p.preorder()
                if n.kind == "Print" and n.children[0].payload == "dead")
    live = next(n for n in p.preorder()
                if n.kind == "Print" and n.children[0].payload == "live")
    assert dead.node_id not in reached
    assert live.node_id in reached


def test_coverage_is_union_and_monotone():
    p = parse("func main(n: int) { if (n > 0) { print(1); } else { print(2); } }")
    pos, neg = t(args=[1], out="1\n"), t(args=[-1], out="2\n")
    c_pos = coverage(p, [pos])
    c_both = coverage(p, [pos, neg])
    assert c_both == coverage(p, [pos]) | coverage(p, [neg])
    assert c_both >= c_pos


def test_suite_file_round_trip(tmp_path):
    suite = Suite("main", [
        TestCase("a", [1, [2, 3], "s", True], "x\n", 5, True),
        TestCase("b", [], "", None, False),
    ])
    path = tmp_path / "suite.json"
    save_suite(suite, path)
    again = load_suite(path)
    assert again.entry == "main"
    assert [t.name for t in again.tests] == ["a", "b"]
    assert again.tests[0].args == [1, [2, 3], "s", True]
    assert again.tests[0].check_return and again.tests[0].expected_return == 5
    assert not again.tests[1].check_return
