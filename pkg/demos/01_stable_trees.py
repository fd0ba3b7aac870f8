"""Stable trees: enumeration, canonical keys, automorphisms, cutting at an edge."""
from contactcount.treeio import describe, dump_tree, to_dot
from contactcount.trees import canonical_key, decompose_at_edge, enumerate_stable_trees, glue

# Trees with three labelled leaves and positive vertex degrees summing to 2.
# One is a single conic; four are pairs of lines with the leaves split somehow.
for key, tree in enumerate_stable_trees(3, 2, positive_only=True):
    print(describe(tree), tree)

# Leafless trees of degree 3: one vertex, one edge, a chain of three lines, and three lines on a contracted centre.
print(len(enumerate_stable_trees(0, 3)), "classes in Gamma(0, 3)")

# Degree-zero trees are counted by the Schroeder numbers 1, 4, 26, 236.
print([len(enumerate_stable_trees(m, 0)) for m in range(3, 7)])

# Cutting at an edge gives two smaller stable trees with one new leaf each.
_, tree = enumerate_stable_trees(4, 3, positive_only=True)[7]
print(dump_tree(tree, "a degree 3 tree with four leaves"))
split = decompose_at_edge(tree, tree.edges[0])
print("halves:", split.sigma, "|", split.sigma_prime)
print("old labels of the first half:", split.labels)
assert canonical_key(glue(split)) == canonical_key(tree)

print(to_dot(tree, "example"))
