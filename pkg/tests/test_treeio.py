import pytest

from contactcount.treeio import TreeFormatError, describe, dump_tree, parse_tree, parse_trees, to_dot
from contactcount.trees import canonical_key, enumerate_stable_trees

CONIC = """\
# two lines, one leaf on the second
tree m=3 d=2
v a 1
v b 1
e a b
l 1 a
l 2 a
l 3 b   # trailing comment
"""


def test_parse_example():
    t = parse_tree(CONIC)
    assert (t.m, t.d, len(t.edges)) == (3, 2, 1)
    assert t.leaves_at("a") == [1, 2] and t.leaves_at("b") == [3]


@pytest.mark.parametrize("m,d", [(3, 2), (4, 1), (2, 3), (5, 0)])
def test_dump_parse_round_trip(m, d):
    trees = enumerate_stable_trees(m, d)
    text = "".join(dump_tree(t, describe(t)) for _, t in trees)
    back = parse_trees(text)
    assert [canonical_key(t) for t in back] == [k for k, _ in trees]


def test_describe():
    t = parse_tree(CONIC)
    assert describe(t) == "aut=1 codim=0"


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("v a 1\n", "header"),
        ("tree m=1 d=1\nv a 1\nl 1 a\nx 1\n", "unknown directive"),
        ("tree m=1 d=1\nv a 1\nv a 1\nl 1 a\n", "duplicate vertex"),
        ("tree m=2 d=1\nv a 1\nl 1 a\nl 1 a\n", "duplicate label"),
        ("tree m=1 d=1\nv a 1\ne a b\nl 1 a\n", "unknown vertex"),
        ("tree m=1 d=1\nv a 1\nl 1 b\n", "unknown vertex"),
        ("tree m=2 d=1\nv a 1\nl 1 a\nl 3 a\n", "exactly 1..2"),
        ("tree m=1 d=2\nv a 1\nl 1 a\n", "sum to 1"),
        ("tree m=1 d=1\nv a x\nl 1 a\n", "bad integer"),
        ("tree m=1 d=1\nv a -1\nl 1 a\n", "negative"),
        ("tree m=x d=1\n", "malformed header"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(TreeFormatError, match=fragment):
        parse_trees(text)


def test_parse_tree_wants_exactly_one():
    with pytest.raises(TreeFormatError):
        parse_tree(CONIC + CONIC)


def test_dot_output():
    dot = to_dot(parse_tree(CONIC), "conic")
    assert dot.startswith("graph conic {")
    assert '"a" -- "b";' in dot
    assert 'label="1 {1,2}"' in dot
