"""Irreducible contact curves: full invariant minus every reducible stratum."""
from contactcount.strata import LabeledQuery, StrataCalculator
from contactcount.tables import PUBLISHED_P3, PUBLISHED_P5_CONICS, table_rows
from contactcount.trees import StableTree

p3 = StrataCalculator(3)

# Conics through two points and meeting a line.  Two stable maps exist, and
# both are pairs of lines, so no irreducible conic remains.
print("full:", p3.gw(2, [3, 3, 2]))
for tree, value in p3.breakdown(2, [3, 3, 2]):
    print(f"  {value}  {tree}")
print("irreducible:", p3.single_vertex_closure_integral(2, [3, 3, 2]))

# One reducible stratum on its own: leaves 1 and 2 on one line, leaf 3 on the other.
tree = StableTree.build({"a": 1, "b": 1}, [("a", "b")], {1: "a", 2: "a", 3: "b"})
print("stratum:", p3.stratum_integral(LabeledQuery(3, tree, {1: 2, 2: 3, 3: 3})))

# Twisted cubics and quartics in P^3.
for d, a in table_rows("p3", 4):
    value = p3.irreducible_count(d, a)
    print(d, a, value, "published" if PUBLISHED_P3[(d, a)] == value else f"published {PUBLISHED_P3[(d, a)]}")

# Conics in P^5.  Six rows disagree with the published table; see the README.
p5 = StrataCalculator(5)
for d, a in table_rows("p5conics", 2):
    value = p5.irreducible_count(d, a)
    note = "" if PUBLISHED_P5_CONICS[(d, a)] == value else f"  (published {PUBLISHED_P5_CONICS[(d, a)]})"
    print(a, value, note)

print(len(p3.memo), "memoized values in P^3")
