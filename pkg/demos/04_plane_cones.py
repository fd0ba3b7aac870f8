"""Contact plane curves are cones over a point: counting them through d + 3 lines."""
from contactcount.strata import LabeledQuery, StrataCalculator, cone_closed_form, cone_recombination, cone_tree
from contactcount.treeio import dump_tree

calc = StrataCalculator(3)

# Such a curve is d contact lines through one point.  Its stable maps have a
# chain of d - 2 contracted components, each carrying one line, plus two end lines.
for d in (3, 4):
    for kind in (1, 2):
        tree = cone_tree(d, kind)
        lines = {i: 2 for i in range(1, tree.m + 1)}
        value = calc.graph_count(LabeledQuery(3, tree, lines))
        print(f"d={d} tree {kind}: {value}")
    print(dump_tree(cone_tree(d, 1)))

# Summing over every way to distribute the d + 3 lines recovers the closed form.
for d in range(3, 9):
    print(d, cone_recombination(d, 4, 8), cone_closed_form(d))
