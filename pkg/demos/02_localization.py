"""Torus localization, with and without the contact twist."""
from fractions import Fraction

from contactcount.localization import LocalizationEngine, enumerate_fixed_graphs, graph_contribution, gw_integral

# Classical checks first: plane rational curves through 3d - 1 points.
print("plane curves:", [gw_integral(2, d, [2] * (3 * d - 1), contact=False) for d in (1, 2, 3, 4)])
print("lines meeting four lines in P^3:", gw_integral(3, 1, [2] * 4, contact=False))
print("conics meeting eight lines in P^3:", gw_integral(3, 2, [2] * 8, contact=False))

# Contact versions.  A contact line through a point lies in its contact plane,
# so asking it to also meet a line leaves a single choice.
print("contact lines through a point meeting a line:", gw_integral(3, 1, [3, 2]))
print("contact lines meeting three lines:", gw_integral(3, 1, [2, 2, 2]))
print("contact conics through two points meeting a line:", gw_integral(3, 2, [3, 3, 2]))

# The same number by summing fixed graphs one at a time.  Each term is a
# rational function of the weights; only the total is an integer.
engine = LocalizationEngine(3, seed=2)
lam = engine.weights(0)
terms = [graph_contribution(g, lam, [3, 3, 2]) for g in enumerate_fixed_graphs(3, 2, 3)]
print(len(terms), "marked fixed graphs; a few terms:", [float(t) for t in terms[:3]])
print("sum:", sum(terms, Fraction(0)))

# A second weight vector gives the same total.
print("other weights:", engine.evaluate(2, [3, 3, 2], 1))
