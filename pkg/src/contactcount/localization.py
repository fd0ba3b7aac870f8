"""Torus localization on the space of genus-0 stable maps to P^n.

Fixed loci are indexed by trees whose vertices are coloured by fixed points
``0..n`` (adjacent colours distinct) and whose edges carry covering degrees.
Each locus contributes

    integrand|_G / (a_G * e_T(N_G)),   a_G = |Aut(T)| * prod(edge degrees),

where ``T`` is the uncoloured edge-weighted tree and every colouring of a
fixed representative of ``T`` is summed over.  With ``contact=True`` the
integrand carries the top Chern class of the rank 2d-1 bundle whose zero
locus is the space of contact stable maps.

Convention: the hyperplane class restricts to ``lam[i]`` at the fixed point
``p_i``, so the tangent space at ``p_i`` has weights ``lam[i] - lam[k]``.
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .classes import ConditionMultiset, moduli_dim
from .trees import compositions, free_trees, tree_code

log = logging.getLogger(__name__)

WEIGHT_RANGE = 2**31
MAX_RESAMPLES = 16


class DegenerateWeightsError(ZeroDivisionError):
    pass


class WeightMismatchError(ArithmeticError):
    """Two independent weight vectors gave different values."""


class NonIntegralError(ArithmeticError):
    pass


@dataclass(frozen=True)
class WeightedTree:
    """Uncoloured tree on vertices ``0..k-1`` with covering degrees on its edges."""

    edges: Tuple[Tuple[int, int], ...]
    edge_degrees: Tuple[int, ...]
    automorphisms: int

    @property
    def n_vertices(self) -> int:
        return len(self.edges) + 1

    @property
    def symmetry(self) -> int:
        return self.automorphisms * prod(self.edge_degrees)


@dataclass(frozen=True)
class FixedGraph:
    tree: WeightedTree
    vertex_labels: Tuple[int, ...]
    mark_assignment: Tuple[int, ...]  # mark i+1 sits on vertex mark_assignment[i]

    @property
    def edge_degrees(self) -> Tuple[int, ...]:
        return self.tree.edge_degrees

    @property
    def symmetry(self) -> int:
        return self.tree.symmetry


@lru_cache(maxsize=None)
def weighted_trees(d: int) -> Tuple[WeightedTree, ...]:
    """Edge-weighted trees with total weight ``d``, one per isomorphism class."""
    found: Dict[str, WeightedTree] = {}
    for k in range(2, d + 2):
        for adj in free_trees(k):
            edges = tuple((u, v) for u in range(k) for v in adj[u] if u < v)
            for degs in compositions(d, len(edges), 1):
                weight = {}
                for (u, v), w in zip(edges, degs):
                    weight[u, v] = weight[v, u] = w
                code, aut = tree_code(adj, lambda v: "", lambda u, v: f"{weight[u, v]}")
                if code not in found:
                    found[code] = WeightedTree(edges, degs, aut)
    return tuple(found[c] for c in sorted(found))


def colourings(tree: WeightedTree, n: int) -> Iterator[Tuple[int, ...]]:
    """Colourings of the vertices by ``0..n`` with adjacent colours distinct."""
    k = tree.n_vertices
    parent = [-1] * k
    order = [0]
    adj: Dict[int, List[int]] = {v: [] for v in range(k)}
    for u, v in tree.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    for v in order:
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                order.append(w)
    colour = [0] * k

    def rec(pos):
        if pos == k:
            yield tuple(colour)
            return
        v = order[pos]
        banned = colour[parent[v]] if pos else -1
        for c in range(n + 1):
            if c != banned:
                colour[v] = c
                yield from rec(pos + 1)

    yield from rec(0)


def enumerate_fixed_graphs(n: int, d: int, m: int) -> Iterator[FixedGraph]:
    """All fixed graphs of degree ``d`` with ``m`` marks, in a deterministic order.

    Each graph is a colouring plus mark placement on a canonical representative
    of its uncoloured tree.  Summing :func:`graph_contribution` over the output
    gives the localization sum; the ``1 / graph.symmetry`` weight is built in.
    """
    if d < 1:
        raise ValueError("fixed graphs need degree >= 1")
    for tree in weighted_trees(d):
        k = tree.n_vertices
        for col in colourings(tree, n):
            for marks in _functions(m, k):
                yield FixedGraph(tree, col, marks)


def _functions(m: int, k: int) -> Iterator[Tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for head in range(k):
        for rest in _functions(m - 1, k):
            yield (head,) + rest


def sample_weights(n: int, rng: random.Random) -> Tuple[int, ...]:
    """``n + 1`` distinct integers drawn uniformly from ``[1, 2^31]``."""
    return tuple(rng.sample(range(1, WEIGHT_RANGE + 1), n + 1))


# -- per-graph factors -------------------------------------------------------------


def _frac(num, den) -> Fraction:
    if den == 0:
        raise DegenerateWeightsError("degenerate weights")
    return Fraction(num, den)


def _graph_core(tree: WeightedTree, col: Sequence[int], lam: Sequence[int], contact: bool):
    """Mark-independent factor of a coloured tree, and the vertex sums S_v.

    Returns ``(base, S)`` such that the contribution with marks of codims
    ``c_i`` at vertices ``v_i`` is ``base * prod_i lam[col[v_i]]**c_i * S[v_i]``.
    """
    n = len(lam) - 1
    k = tree.n_vertices
    flags: List[List[Fraction]] = [[] for _ in range(k)]  # omega_F at each vertex
    num = 1
    den = tree.symmetry
    value = Fraction(1)
    for (u, v), delta in zip(tree.edges, tree.edge_degrees):
        li, lj = lam[col[u]], lam[col[v]]
        flags[u].append(_frac(li - lj, delta))
        flags[v].append(_frac(lj - li, delta))
        # moving part of H^0(f*T P^n) on the degree-delta cover of the line p_i p_j
        den *= (-1) ** delta * factorial(delta) ** 2 * (li - lj) ** (2 * delta)
        num *= delta ** (2 * delta)
        for kk in range(n + 1):
            if kk in (col[u], col[v]):
                continue
            lk = lam[kk]
            for a in range(delta + 1):
                den *= a * li + (delta - a) * lj - delta * lk
                num *= delta
        if contact:
            for a in range(1, 2 * delta):
                num *= a * li + (2 * delta - a) * lj
                den *= delta
    if den == 0:
        raise DegenerateWeightsError("degenerate weights")
    value = Fraction(num, den)
    S: List[Fraction] = []
    for v in range(k):
        li = lam[col[v]]
        val = len(flags[v])
        tangent = prod(li - lam[kk] for kk in range(n + 1) if kk != col[v])
        inv = [1 / w for w in flags[v]]
        s = sum(inv, Fraction(0))
        if s == 0 and val < 3:
            raise DegenerateWeightsError("degenerate weights")
        value *= Fraction(tangent) ** (val - 1) * prod(inv, start=Fraction(1))
        if val != 3:
            value *= s ** (val - 3)
        if contact:
            value *= (2 * li) ** (val - 1)
        S.append(s)
    return value, S


def contact_class_factor(tree: WeightedTree, col: Sequence[int], lam: Sequence[int]) -> List[int | Fraction]:
    """Linear forms whose product is the contact Euler class at a fixed locus."""
    forms: List[int | Fraction] = []
    val = Counter()
    for (u, v), delta in zip(tree.edges, tree.edge_degrees):
        val[u] += 1
        val[v] += 1
        li, lj = lam[col[u]], lam[col[v]]
        forms += [Fraction(a * li + (2 * delta - a) * lj, delta) for a in range(1, 2 * delta)]
    for v in range(tree.n_vertices):
        forms += [2 * lam[col[v]]] * (val[v] - 1)
    return forms


def graph_contribution(
    graph: FixedGraph, lam: Sequence[int], conditions: Mapping[int, int] | Sequence[int], contact: bool = True
) -> Fraction:
    """Contribution of one marked fixed graph, including ``1 / graph.symmetry``.

    ``conditions`` maps mark -> codim (or lists codims for marks 1..m)."""
    if not isinstance(conditions, Mapping):
        conditions = {i + 1: c for i, c in enumerate(conditions)}
    if sorted(conditions) != list(range(1, len(graph.mark_assignment) + 1)):
        raise ValueError("conditions do not match the marks of the graph")
    base, S = _graph_core(graph.tree, graph.vertex_labels, lam, contact)
    for i, v in enumerate(graph.mark_assignment):
        base *= lam[graph.vertex_labels[v]] ** conditions[i + 1] * S[v]
    return base


# -- integrals ---------------------------------------------------------------------


def expected_dim(n: int, d: int, m: int, contact: bool = True) -> int:
    if contact:
        return moduli_dim(n, d, m)
    return (n + 1) * d + n + m - 3


class LocalizationEngine:
    """Evaluates integrals of evaluation classes over stable maps to P^n.

    Per-graph factors are computed once per (degree, weight vector) and reused
    for every condition multiset.  ``gw_integral`` evaluates with two
    independent weight vectors and insists on agreement and integrality.
    """

    def __init__(self, n: int, *, contact: bool = True, seed: int = 0, verify: bool = True, threads: int = 1):
        if contact and n % 2 == 0:
            raise ValueError("contact structures live on odd-dimensional projective spaces")
        if threads < 1:
            raise ValueError("threads must be >= 1")
        self.n = n
        self.contact = contact
        self.verify = verify
        self.threads = threads
        self._rng = random.Random(seed)
        self._samples: List[Tuple[int, ...]] = []
        self._cores: Dict[Tuple[int, int], list] = {}

    def weights(self, slot: int) -> Tuple[int, ...]:
        while len(self._samples) <= slot:
            self._samples.append(sample_weights(self.n, self._rng))
        return self._samples[slot]

    def _build(self, d: int, lam: Sequence[int]) -> list:
        out = []
        for tree in weighted_trees(d):
            for col in colourings(tree, self.n):
                base, S = _graph_core(tree, col, lam, self.contact)
                out.append((base, [lam[c] for c in col], S))
        return out

    def _core(self, d: int, slot: int) -> list:
        key = (d, slot)
        if key not in self._cores:
            for _ in range(MAX_RESAMPLES):
                try:
                    self._cores[key] = self._build(d, self.weights(slot))
                    break
                except ZeroDivisionError:
                    log.warning("degenerate weights for d=%d, resampling", d)
                    self._samples[slot] = sample_weights(self.n, self._rng)
            else:
                raise DegenerateWeightsError(f"no usable weights after {MAX_RESAMPLES} samples")
            log.info("degree %d, weight sample %d: %d coloured graphs", d, slot, len(self._cores[key]))
        return self._cores[key]

    def evaluate(self, d: int, codims: Sequence[int], slot: int = 0) -> Fraction:
        """Localization sum with the weight vector in ``slot`` (no checks)."""
        counts = sorted(Counter(codims).items())
        core = self._core(d, slot)

        def partial(chunk):
            total = Fraction(0)
            for base, lams, S in chunk:
                term = base
                for c, a in counts:
                    term *= sum((l**c * s for l, s in zip(lams, S)), Fraction(0)) ** a
                total += term
            return total

        if self.threads == 1 or len(core) < 2 * self.threads:
            return partial(core)
        size = -(-len(core) // self.threads)
        chunks = [core[i : i + size] for i in range(0, len(core), size)]
        with ThreadPoolExecutor(self.threads) as pool:
            return sum(pool.map(partial, chunks), Fraction(0))

    def gw_integral(self, d: int, conditions: ConditionMultiset | Sequence[int]) -> int:
        codims = list(conditions)
        if any(not 0 <= c <= self.n for c in codims):
            raise ValueError(f"codimensions must lie in 0..{self.n}")
        if d < 1:
            raise ValueError("gw_integral needs degree >= 1")
        if sum(codims) != expected_dim(self.n, d, len(codims), self.contact):
            return 0
        value = self.evaluate(d, codims, 0)
        if self.verify:
            other = self.evaluate(d, codims, 1)
            if other != value:
                raise WeightMismatchError(f"weight dependence in degree {d}, {codims}: {value} vs {other}")
        if value.denominator != 1:
            raise NonIntegralError(f"non-integral invariant {value} for degree {d}, {codims}")
        return int(value)


_engines: Dict[Tuple[int, bool, int], LocalizationEngine] = {}


def gw_integral(n: int, d: int, conditions: ConditionMultiset | Sequence[int], *, contact: bool = True, seed: int = 0) -> int:
    """Integral of ``prod ev_i^*(H^{c_i})`` over contact stable maps (or all maps)."""
    key = (n, contact, seed)
    if key not in _engines:
        _engines[key] = LocalizationEngine(n, contact=contact, seed=seed)
    return _engines[key].gw_integral(d, conditions)
