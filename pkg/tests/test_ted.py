import random

from oracles import ted_bruteforce

from minifix.embed import tree_edit_distance
from minifix.lang import parse, parse_statement
from minifix.lang.ast import Node, clone, renumber
from minifix.randprog import random_program, random_tree


def test_identical_trees_have_distance_zero():
    a = parse_statement("x = y + 1;")
    b = parse_statement("x = y + 1;")
    assert tree_edit_distance(a, b) == 0


def test_payload_change_costs_one():
    a = parse_statement("x = 1;")
    b = parse_statement("x = 2;")
    assert tree_edit_distance(a, b) == 1


def test_kind_change_costs_one():
    a = parse_statement("x = a + b;")
    b = parse_statement("x = a - b;")
    assert tree_edit_distance(a, b) == 1


def test_single_insertion_costs_one():
    a = parse_statement("x = j;")
    b = parse_statement("x = -j;")
    assert tree_edit_distance(a, b) == 1


def test_assignment_operator_is_payload():
    a = parse_statement("x = 1;")
    b = parse_statement("x += 1;")
    assert tree_edit_distance(a, b) == 1


def test_matches_bruteforce_mapping_oracle():
    rng = random.Random(1234)
    for _ in range(150):
        a = random_tree(rng, rng.randint(1, 6))
        b = random_tree(rng, rng.randint(1, 6))
        assert tree_edit_distance(a, b) == ted_bruteforce(a, b)


def test_metric_properties_on_random_trees():
    rng = random.Random(99)
    trees = [random_tree(rng, rng.randint(1, 9)) for _ in range(12)]
    for a in trees:
        assert tree_edit_distance(a, a) == 0
    for a in trees:
        for b in trees:
            assert tree_edit_distance(a, b) == tree_edit_distance(b, a)
    for _ in range(60):
        a, b, c = (rng.choice(trees) for _ in range(3))
        assert tree_edit_distance(a, c) <= \
            tree_edit_distance(a, b) + tree_edit_distance(b, c)


def test_distance_bounded_by_sizes():
    rng = random.Random(5)
    for _ in range(30):
        a = random_program(rng)
        b = random_program(rng)
        d = tree_edit_distance(a, b)
        assert abs(a.size() - b.size()) <= d <= a.size() + b.size()


def test_whole_program_distance():
    a = parse("func main(n: int) { print(n); }")
    b = parse("func main(n: int) { print(n + 1); }")
    assert tree_edit_distance(a, b) == 2  # insert BinOp(+) and IntLit 1


def test_single_node_cases():
    one = renumber(Node("a"), 0)
    two = renumber(Node("a", None, [Node("b")]), 0)
    assert tree_edit_distance(one, one) == 0
    assert tree_edit_distance(one, two) == 1
    assert tree_edit_distance(two, clone(two)) == 0
