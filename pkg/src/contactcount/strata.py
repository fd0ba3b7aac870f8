"""Integrals over strata of contact stable maps and irreducible counts.

The closure of the stratum of a tree ``tau`` is handled by cutting ``tau`` at
an edge ``{f, f'}``::

    I(tau) = |Aut s||Aut s'| / |Aut tau| * sum_j I(s; f -> n-j) * I(s'; f' -> j)

down to single-vertex trees.  The single-vertex closure of degree ``d`` is the
full contact integral minus the closures of all other trees with positive
degrees.  Only the full (``G``) and single-vertex (``I``) values are memoized.
"""
from __future__ import annotations

import itertools
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Dict, List, Mapping, Sequence, Tuple

from .classes import ConditionMultiset, degree_zero_integral, moduli_dim, stratum_dim
from .localization import LocalizationEngine, NonIntegralError
from .memo import MemoStore, memo_key
from .trees import (
    StableTree,
    automorphism_order,
    canonical_key,
    compositions,
    decompose_at_edge,
    enumerate_stable_trees,
    validate,
)

log = logging.getLogger(__name__)

METHODS = ("shapes", "trees")


class DimensionWarning(UserWarning):
    pass


class VerificationError(ArithmeticError):
    pass


@dataclass
class LabeledQuery:
    """A stable tree together with a codimension for each leaf label."""

    ambient_n: int
    tree: StableTree
    leaf_conditions: Dict[int, int]

    def __post_init__(self):
        labels = sorted(self.tree.leaf_labels.values())
        if sorted(self.leaf_conditions) != labels:
            raise ValueError(f"conditions given for labels {sorted(self.leaf_conditions)}, tree has {labels}")
        for c in self.leaf_conditions.values():
            if not 0 <= c <= self.ambient_n:
                raise ValueError(f"codimension {c} outside 0..{self.ambient_n}")

    @property
    def key(self) -> bytes:
        return canonical_key(self.tree)


def _safe_dim(n: int, d: int, m: int) -> int | None:
    if d == 0 and m < 3:
        return None
    return moduli_dim(n, d, m)


class StrataCalculator:
    """Memoized stratum integrals for contact stable maps to P^n.

    ``method`` selects how the reducible part of the full integral is summed:
    ``"trees"`` walks every class of positive-degree trees with labelled
    leaves; ``"shapes"`` walks unlabelled trees and distributes conditions
    over vertices with multinomial weights.  Both give the same numbers.
    """

    def __init__(
        self,
        n: int,
        *,
        engine: LocalizationEngine | None = None,
        memo: MemoStore | None = None,
        method: str = "shapes",
    ):
        if method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        self.n = n
        self.engine = engine or LocalizationEngine(n)
        if self.engine.n != n or not self.engine.contact:
            raise ValueError("engine must compute contact integrals on the same P^n")
        self.memo = memo if memo is not None else MemoStore()
        self.method = method
        self._positive_trees: Dict[Tuple[int, int], list] = {}

    # -- memoized base values ------------------------------------------------------

    def gw(self, d: int, codims: Sequence[int]) -> Fraction:
        key = memo_key("G", self.n, d, codims)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        return self.memo.put(key, self.engine.gw_integral(d, key[3]))

    def single_vertex_closure_integral(self, d: int, codims: Sequence[int]) -> Fraction:
        """Integral over the closure of the irreducible locus of degree ``d``."""
        codims = sorted(codims, reverse=True)
        if d == 0:
            return Fraction(degree_zero_integral(self.n, codims))
        if sum(codims) != moduli_dim(self.n, d, len(codims)):
            return Fraction(0)
        if d == 1:
            return self.gw(1, codims)
        key = memo_key("I", self.n, d, codims)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        value = self.gw(d, codims) - self.reducible_sum(d, codims)
        return self.memo.put(key, value)

    # -- stratum recursion ---------------------------------------------------------

    def canonical_edge(self, tree: StableTree) -> Tuple[int, int]:
        """Deterministic cut edge: among edges at vertices of maximal eccentricity,
        the one whose pair of halves has the smallest canonical keys."""
        adj = tree.adjacency()
        simple = {v: [w for w, _ in ns] for v, ns in adj.items()}

        def eccentricity(v):
            dist = {v: 0}
            frontier = [v]
            while frontier:
                nxt = []
                for u in frontier:
                    for w in simple[u]:
                        if w not in dist:
                            dist[w] = dist[u] + 1
                            nxt.append(w)
                frontier = nxt
            return max(dist.values())

        ecc = {v: eccentricity(v) for v in adj}
        top = max(ecc.values())
        best = None
        for v in adj:
            if ecc[v] != top:
                continue
            for _, f in adj[v]:
                split = decompose_at_edge(tree, f)
                rank = (canonical_key(split.sigma), canonical_key(split.sigma_prime))
                edge = (min(f, tree.involution[f]), max(f, tree.involution[f]))
                if best is None or rank < best[0]:
                    best = (rank, edge)
        return best[1]

    def stratum_integral(self, query: LabeledQuery, edge: Tuple[int, int] | int | None = None) -> Fraction:
        """Integral over the closure of the stratum of ``query.tree``.

        ``edge`` forces the first cut; deeper cuts use :meth:`canonical_edge`.
        """
        if query.ambient_n != self.n:
            raise ValueError("query lives on a different projective space")
        return self._stratum(query.tree, query.leaf_conditions, edge)

    def _stratum(self, tree: StableTree, conds: Mapping[int, int], edge=None) -> Fraction:
        if validate(tree):
            raise ValueError("not a stable tree")
        if len(tree.degrees) == 1:
            return self.single_vertex_closure_integral(tree.d, list(conds.values()))
        if sum(conds.values()) != stratum_dim(self.n, tree):
            return Fraction(0)
        split = decompose_at_edge(tree, edge if edge is not None else self.canonical_edge(tree))
        left = {new: conds[old] for new, old in split.labels.items() if old is not None}
        right = {new: conds[old] for new, old in split.labels_prime.items() if old is not None}
        cut, cut_prime = split.sigma.m, split.sigma_prime.m
        total = Fraction(0)
        for j in range(self.n + 1):
            a = self._stratum(split.sigma, {**left, cut: self.n - j})
            if a == 0:
                continue
            total += a * self._stratum(split.sigma_prime, {**right, cut_prime: j})
        if total == 0:
            return total
        factor = Fraction(
            automorphism_order(split.sigma) * automorphism_order(split.sigma_prime), automorphism_order(tree)
        )
        return factor * total

    def graph_count(self, query: LabeledQuery) -> Fraction:
        """Number of contact stable maps with dual graph ``query.tree`` meeting the conditions."""
        if sum(query.leaf_conditions.values()) != stratum_dim(self.n, query.tree):
            warnings.warn("conditions do not match the stratum dimension", DimensionWarning, stacklevel=2)
            return Fraction(0)
        return self.stratum_integral(query)

    # -- reducible part ------------------------------------------------------------

    def positive_trees(self, m: int, d: int) -> list:
        key = (m, d)
        if key not in self._positive_trees:
            self._positive_trees[key] = enumerate_stable_trees(m, d, positive_only=True)
        return self._positive_trees[key]

    def breakdown(self, d: int, codims: Sequence[int]) -> List[Tuple[StableTree, Fraction]]:
        """Per-tree closure integrals over positive-degree trees, single vertex first.

        Conditions are attached to labels ``1..m`` in descending order.
        """
        codims = sorted(codims, reverse=True)
        conds = {i + 1: c for i, c in enumerate(codims)}
        out = []
        for _, tree in self.positive_trees(len(codims), d):
            out.append((tree, self._stratum(tree, conds)))
        out.sort(key=lambda item: (len(item[0].degrees), canonical_key(item[0])))
        return out

    def reducible_sum(self, d: int, codims: Sequence[int]) -> Fraction:
        """Sum of closure integrals over positive-degree trees with >= 2 vertices."""
        codims = sorted(codims, reverse=True)
        if self.method == "trees":
            conds = {i + 1: c for i, c in enumerate(codims)}
            return sum(
                (self._stratum(t, conds) for _, t in self.positive_trees(len(codims), d) if len(t.degrees) > 1),
                Fraction(0),
            )
        return sum((self._shape_sum(shape, codims) for shape in self.shapes(d)), Fraction(0))

    def shapes(self, d: int) -> List[StableTree]:
        """Leafless trees with positive vertex degrees summing to ``d`` and >= 2 vertices."""
        return [t for _, t in self.positive_trees(0, d) if len(t.degrees) > 1]

    def _shape_sum(self, shape: StableTree, codims: Sequence[int]) -> Fraction:
        # sum over labelled trees on this shape = (1/|Aut|) sum over maps {1..m} -> V;
        # the fibre-product integral of a labelled tree needs no automorphism factor
        verts = list(shape.degrees)
        k = len(verts)
        index = {v: i for i, v in enumerate(verts)}
        children: List[List[int]] = [[] for _ in range(k)]
        parent = [-1] * k
        order = [0]
        adj = {index[v]: [index[w] for w, _ in ns] for v, ns in shape.adjacency().items()}
        seen = {0}
        for v in order:
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    parent[w] = v
                    children[v].append(w)
                    order.append(w)
        degs = [shape.degrees[v] for v in verts]
        groups = sorted(set(codims), reverse=True)
        amounts = [codims.count(c) for c in groups]

        total = Fraction(0)
        for split in itertools.product(*(compositions(a, k) for a in amounts)):
            weight = prod(factorial(a) // prod(factorial(x) for x in parts) for a, parts in zip(amounts, split))
            at = [[c for c, parts in zip(groups, split) for _ in range(parts[v])] for v in range(k)]
            value = self._fibre_product(degs, children, parent, order, at)
            if value:
                total += weight * value
        return total / automorphism_order(shape)

    def _fibre_product(self, degs, children, parent, order, at) -> Fraction:
        # flag codims towards the parent are forced by the dimension of each piece
        up: Dict[int, int] = {}
        value = Fraction(1)
        for v in reversed(order):
            cs = at[v] + [self.n - up[w] for w in children[v]]
            if parent[v] < 0:
                piece = self.single_vertex_closure_integral(degs[v], cs)
            else:
                dim = _safe_dim(self.n, degs[v], len(cs) + 1)
                if dim is None:
                    return Fraction(0)
                x = dim - sum(cs)
                if not 0 <= x <= self.n:
                    return Fraction(0)
                up[v] = x
                piece = self.single_vertex_closure_integral(degs[v], cs + [x])
            if piece == 0:
                return Fraction(0)
            value *= piece
        return value

    # -- user-facing counts ----------------------------------------------------------

    def irreducible_count(self, d: int, a: Sequence[int]) -> int:
        """Irreducible contact curves of degree ``d`` meeting ``a[i]`` general
        linear subspaces of codimension ``i + 2``."""
        cond = ConditionMultiset.from_counts(self.n, a)
        if cond.total != moduli_dim(self.n, d, len(cond)):
            warnings.warn(
                f"conditions {list(a)} do not match dimension {moduli_dim(self.n, d, len(cond))}",
                DimensionWarning,
                stacklevel=2,
            )
            return 0
        value = self.single_vertex_closure_integral(d, cond.codims)
        if value.denominator != 1:
            raise NonIntegralError(f"non-integral count {value}")
        if value < 0:
            raise VerificationError(f"negative count {value}")
        return int(value)

    def potential_coefficient(self, d: int, m_vec: Sequence[int]) -> int:
        """Coefficient ``I_d(m_0, ..., m_n)`` of the contact potential."""
        if len(m_vec) != self.n + 1:
            raise ValueError(f"need {self.n + 1} multiplicities")
        codims = ConditionMultiset.from_counts(self.n, m_vec, start=0).codims
        if d == 0:
            return degree_zero_integral(self.n, codims)
        if sum(codims) != moduli_dim(self.n, d, len(codims)):
            return 0
        return int(self.gw(d, codims))


# -- module-level conveniences ----------------------------------------------------------

_calculators: Dict[int, StrataCalculator] = {}


def calculator(n: int) -> StrataCalculator:
    if n not in _calculators:
        _calculators[n] = StrataCalculator(n)
    return _calculators[n]


def single_vertex_closure_integral(n: int, d: int, conditions: ConditionMultiset | Sequence[int]) -> Fraction:
    return calculator(n).single_vertex_closure_integral(d, list(conditions))


def stratum_integral(query: LabeledQuery) -> Fraction:
    return calculator(query.ambient_n).stratum_integral(query)


def graph_count(query: LabeledQuery) -> Fraction:
    return calculator(query.ambient_n).graph_count(query)


def irreducible_count(n: int, d: int, a: Sequence[int]) -> int:
    return calculator(n).irreducible_count(d, a)


def potential_coefficient(n: int, d: int, m_vec: Sequence[int]) -> int:
    return calculator(n).potential_coefficient(d, m_vec)


# -- plane cones through d + 3 lines ------------------------------------------------------


def cone_closed_form(d: int) -> int:
    """Contact plane curves of degree d in P^3 meeting d + 3 general lines."""
    if d < 1:
        raise ValueError("degree must be positive")
    value = d * d * (d + 3) * (d + 2) * (d + 1) * (d - 1)
    assert value % 6 == 0
    return value // 6


def cone_recombination(d: int, first: int, second: int) -> Fraction:
    """Recombine the two per-tree counts over all leaf distributions."""
    return comb(d + 3, 3) * comb(d, 2) * Fraction(first) + Fraction(
        comb(d + 3, 2) * comb(d + 1, 2) * comb(d - 1, 2) * second, 6
    )


def cone_tree(d: int, kind: int) -> StableTree:
    """Cone trees: a chain of d-2 contracted vertices, each with a pendant line.

    ``kind=1``: the end lines carry leaves {1,2,3} and {d+3}, the first pendant
    {4,5}.  ``kind=2``: end lines carry {1,2} and {d+3} (for d = 3: {5,6}),
    the first two pendants {3,4} and {5,6}.  Remaining pendants take one leaf.
    """
    if d < 3:
        raise ValueError("cone trees need degree >= 3")
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    degrees = {f"z{i}": 0 for i in range(1, d - 1)}
    degrees.update({f"p{i}": 1 for i in range(1, d - 1)})
    degrees.update(first=1, last=1)
    edges = [("first", "z1"), (f"z{d - 2}", "last")]
    edges += [(f"z{i}", f"z{i + 1}") for i in range(1, d - 2)]
    edges += [(f"z{i}", f"p{i}") for i in range(1, d - 1)]
    if kind == 1:
        groups = [("first", [1, 2, 3]), ("p1", [4, 5])]
        label = 6
        rest = [f"p{i}" for i in range(2, d - 1)]
    else:
        groups = [("first", [1, 2]), ("p1", [3, 4])]
        label = 5
        if d == 3:
            rest = []
            groups.append(("last", [5, 6]))
        else:
            groups.append(("p2", [5, 6]))
            label = 7
            rest = [f"p{i}" for i in range(3, d - 1)]
    leaves = {lab: v for v, labs in groups for lab in labs}
    for v in rest:
        leaves[label] = v
        label += 1
    if label == d + 3:
        leaves[label] = "last"
    tree = StableTree.build(degrees, edges, leaves)
    assert not validate(tree) and tree.m == d + 3, validate(tree)
    return tree
