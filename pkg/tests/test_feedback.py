import pytest

from minifix.align import alpha_conversion, discrepancies
from minifix.feedback import to_json_payload, translate
from minifix.lang import parse
from minifix.repair import MinimalFixSet, gen_fixes, minimize
from minifix.interp import TestCase

PRED_E = """
func main(n: int) {
    var s = "";
    for (var i = 0; i < n; i += 1) {
        if (i % 2 == 0) {
            s += "X";
        } else {
            s += "O";
        }
    }
    print(s);
}
"""


def fm_for(src_e: str, src_c: str) -> MinimalFixSet:
    pe, pc = parse(src_e), parse(src_c)
    pac, _ = alpha_conversion(pe, pc, 1)
    fixes = gen_fixes(discrepancies(pe, pac))
    return MinimalFixSet(fixes, len(fixes), sum(f.cost for f in fixes))


def test_modification_message_names_subexpression():
    src_e = PRED_E.replace("i % 2 == 0", "i % 2 == 1")
    header, items = translate(fm_for(src_e, PRED_E), 5)
    assert header == "The program requires 1 change:"
    assert items[0].message == \
        "In i % 2 == 1 on line 5, change 1 to 0."
    assert items[0].line == 5


def test_operator_change_message_uses_bare_operators():
    src_e = PRED_E.replace("i % 2 == 0", "i % 2 > 0")
    _, items = translate(fm_for(src_e, PRED_E), 5)
    assert items[0].message == "In i % 2 > 0 on line 5, change > to ==."


def test_subexpression_growth_message():
    src_c = PRED_E.replace("i % 2 == 0", "(i + n) % 2 == 0")
    _, items = translate(fm_for(PRED_E, src_c), 5)
    assert items[0].message == \
        "In i % 2 == 0 on line 5, change i to i + n."


def test_insertion_message():
    src_e = PRED_E.replace('    print(s);\n', "")
    header, items = translate(fm_for(src_e, PRED_E), 5)
    assert header == "The program requires 1 change:"
    assert items[0].kind == "insertion"
    assert items[0].message == f"At line {items[0].line}, add print(s)."


def test_deletion_message():
    src_e = PRED_E.replace('print(s);', 'print(s); print("extra");')
    _, items = translate(fm_for(src_e, PRED_E), 5)
    assert items[0].kind == "deletion"
    assert items[0].message == \
        f'At line {items[0].line}, remove print("extra").'


def test_zero_change_header():
    header, items = translate(MinimalFixSet([], 0, 0), 5)
    assert header == "The program requires 0 changes."
    assert items == []


def test_levels_are_cumulative():
    src_e = PRED_E.replace("i % 2 == 0", "i % 2 == 1")
    fm = fm_for(src_e, PRED_E)
    messages = {}
    for level in range(1, 6):
        header, items = translate(fm, level)
        messages[level] = items[0].message
    assert messages[1] == ""
    assert messages[2] == "Change needed at line 5."
    assert messages[3] == "In i % 2 == 1 on line 5, make a change."
    assert messages[4] == "In i % 2 == 1 on line 5, change 1."
    assert messages[5] == "In i % 2 == 1 on line 5, change 1 to 0."
    # each level only ever adds information
    assert "line 5" in messages[2]
    assert "i % 2 == 1" in messages[3]
    assert "change 1" in messages[4]
    assert "to 0" in messages[5]


def test_level_out_of_range_rejected():
    with pytest.raises(ValueError):
        translate(MinimalFixSet([], 0, 0), 0)
    with pytest.raises(ValueError):
        translate(MinimalFixSet([], 0, 0), 6)


def test_referenced_lines_exist_in_source():
    src_e = PRED_E.replace("i % 2 == 0", "i % 2 == 1") \
                  .replace('s += "O"', 's += "Q"')
    n_lines = len(src_e.splitlines())
    _, items = translate(fm_for(src_e, PRED_E), 5)
    assert items
    for item in items:
        assert 1 <= item.line <= n_lines


def test_json_payload_shape():
    src_e = PRED_E.replace("i % 2 == 0", "i % 2 == 1")
    fm = fm_for(src_e, PRED_E)
    header, items = translate(fm, 5)
    payload = to_json_payload(fm, items)
    assert payload["change_count"] == 1
    item = payload["items"][0]
    assert set(item) == {"line", "kind", "original", "replacement"}
    assert item["kind"] == "modification"
    assert item["original"] == "i % 2 == 1"
    assert item["replacement"] == "i % 2 == 0"


def test_minimized_real_repair_translates():
    suite = [TestCase("t", [4], "XOXO\n")]
    src_e = PRED_E.replace("i % 2 == 0", "i % 2 == 1")
    pe, pc = parse(src_e), parse(PRED_E)
    pac, _ = alpha_conversion(pe, pc, 1)
    fm = minimize(pe, gen_fixes(discrepancies(pe, pac)), suite)
    header, items = translate(fm, 5)
    assert header == "The program requires 1 change:"
    assert len(items) == 1
