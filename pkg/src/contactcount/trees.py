"""Stable (m, d)-trees: validation, canonical keys, automorphisms, enumeration.

A tree is stored in flag form.  Every flag sits on a vertex (``boundary``);
the involution pairs the two flags of an edge and fixes the flags that are
leaves.  Leaves carry labels ``1..m`` and vertices carry non-negative degrees.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Sequence, Tuple

import networkx as nx

Vertex = Hashable
CanonicalKey = bytes


class InvalidTreeError(ValueError):
    pass


@dataclass(frozen=True)
class StableTree:
    """A stable (m, d)-tree in flag form.

    ``boundary`` maps flag -> vertex, ``involution`` maps flag -> flag,
    ``leaf_labels`` maps each leaf flag to its label and ``degrees`` maps
    vertex -> degree.  The flag and vertex sets are the key sets of
    ``boundary`` and ``degrees``.
    """

    boundary: Mapping[int, Vertex]
    involution: Mapping[int, int]
    leaf_labels: Mapping[int, int]
    degrees: Mapping[Vertex, int]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    __hash__ = None  # use canonical_key() for hashing

    @classmethod
    def build(
        cls,
        degrees: Mapping[Vertex, int],
        edges: Iterable[Tuple[Vertex, Vertex]] = (),
        leaves: Mapping[int, Vertex] | None = None,
    ) -> "StableTree":
        """Build a tree from vertex degrees, an edge list and ``{label: vertex}``."""
        boundary: Dict[int, Vertex] = {}
        involution: Dict[int, int] = {}
        leaf_labels: Dict[int, int] = {}
        f = 0
        for u, v in edges:
            boundary[f], boundary[f + 1] = u, v
            involution[f], involution[f + 1] = f + 1, f
            f += 2
        for label, v in sorted((leaves or {}).items()):
            boundary[f] = v
            involution[f] = f
            leaf_labels[f] = label
            f += 1
        return cls(boundary, involution, leaf_labels, dict(degrees))

    # -- derived data -------------------------------------------------------

    @property
    def flags(self) -> List[int]:
        return sorted(self.boundary)

    @property
    def vertices(self) -> List[Vertex]:
        return list(self.degrees)

    @property
    def m(self) -> int:
        return len(self.leaf_labels)

    @property
    def d(self) -> int:
        return sum(self.degrees.values())

    @property
    def edges(self) -> List[Tuple[int, int]]:
        """Edges as flag pairs ``(f, j(f))`` with ``f < j(f)``."""
        return [(f, g) for f, g in sorted(self.involution.items()) if f < g]

    def edge_vertices(self) -> List[Tuple[Vertex, Vertex]]:
        return [(self.boundary[f], self.boundary[g]) for f, g in self.edges]

    def leaves_at(self, v: Vertex) -> List[int]:
        return sorted(lab for f, lab in self.leaf_labels.items() if self.boundary[f] == v)

    def leaf_vertex(self) -> Dict[int, Vertex]:
        """``{label: vertex}``."""
        return {lab: self.boundary[f] for f, lab in self.leaf_labels.items()}

    def valence(self, v: Vertex) -> int:
        return sum(1 for w in self.boundary.values() if w == v)

    def adjacency(self) -> Dict[Vertex, List[Tuple[Vertex, int]]]:
        """``{v: [(neighbour, flag at v), ...]}`` over edges only."""
        adj: Dict[Vertex, List[Tuple[Vertex, int]]] = {v: [] for v in self.degrees}
        for f, g in self.edges:
            u, w = self.boundary[f], self.boundary[g]
            adj[u].append((w, f))
            adj[w].append((u, g))
        return adj

    def relabel(self, flag_map: Mapping[int, int], vertex_map: Mapping[Vertex, Vertex]) -> "StableTree":
        """Rename internal flag and vertex identifiers (an isomorphic copy)."""
        return StableTree(
            {flag_map[f]: vertex_map[v] for f, v in self.boundary.items()},
            {flag_map[f]: flag_map[g] for f, g in self.involution.items()},
            {flag_map[f]: lab for f, lab in self.leaf_labels.items()},
            {vertex_map[v]: k for v, k in self.degrees.items()},
        )

    def __str__(self) -> str:
        parts = [f"{v}:{k}{self.leaves_at(v) or ''}" for v, k in self.degrees.items()]
        return f"StableTree(m={self.m}, d={self.d}; {' '.join(parts)}; edges={self.edge_vertices()})"


# -- validation ----------------------------------------------------------------


def validate(tree: StableTree) -> List[str]:
    """Return the list of violated invariants; empty means the tree is stable."""
    problems = []
    flags = set(tree.boundary)
    verts = set(tree.degrees)
    if set(tree.involution) != flags:
        problems.append("involution: domain differs from the flag set")
    elif any(tree.involution[f] not in flags or tree.involution[tree.involution[f]] != f for f in flags):
        problems.append("involution: j o j is not the identity")
    if any(v not in verts for v in tree.boundary.values()):
        problems.append("boundary: flag attached to an unknown vertex")
    if any(k < 0 for k in tree.degrees.values()):
        problems.append("degrees: negative degree")
    fixed = {f for f in flags if tree.involution.get(f) == f}
    if set(tree.leaf_labels) != fixed:
        problems.append("leaf_labels: labelled flags differ from the fixed points of the involution")
    if sorted(tree.leaf_labels.values()) != list(range(1, len(fixed) + 1)):
        problems.append("leaf_labels: not a bijection onto 1..m")
    if problems:
        return problems

    n_edges = (len(flags) - len(fixed)) // 2
    if n_edges + len(fixed) + len(verts) != 1 + len(flags):
        problems.append("tree identity: |E| + |L| + |V| != 1 + |F|")
    if verts:
        g = nx.Graph()
        g.add_nodes_from(verts)
        g.add_edges_from(tree.edge_vertices())
        if not nx.is_connected(g):
            problems.append("connectivity: graph is not connected")
    else:
        problems.append("connectivity: no vertices")
    for v, k in tree.degrees.items():
        if k == 0 and tree.valence(v) < 3:
            problems.append(f"stability: vertex {v!r} has degree 0 and valence {tree.valence(v)}")
    return problems


def is_stable_tree(tree: StableTree) -> bool:
    return not validate(tree)


def _require_valid(tree: StableTree) -> None:
    if "valid" not in tree._cache:
        tree._cache["valid"] = not validate(tree)
    if not tree._cache["valid"]:
        raise InvalidTreeError("not a stable tree: " + "; ".join(validate(tree)))


# -- canonical encoding ----------------------------------------------------------


def centers(adj: Mapping[Vertex, Sequence[Vertex]]) -> List[Vertex]:
    """The one or two centre vertices of a tree (by repeated leaf pruning)."""
    deg = {v: len(ns) for v, ns in adj.items()}
    remaining = set(adj)
    layer = [v for v in adj if deg[v] <= 1]
    while len(remaining) > 2:
        nxt = []
        for v in layer:
            remaining.discard(v)
            for w in adj[v]:
                if w in remaining:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(remaining, key=repr)


def tree_code(
    adj: Mapping[Vertex, Sequence[Vertex]],
    vertex_label: Callable[[Vertex], str],
    edge_label: Callable[[Vertex, Vertex], str] = lambda u, v: "",
) -> Tuple[str, int]:
    """Canonical string and automorphism count of a decorated tree.

    Rooted at the centre (or at the central edge), each vertex is encoded as
    its label followed by the sorted codes of its children.  Automorphisms
    permute children with equal codes, plus the swap of two equal halves.
    """
    aut = 1

    def encode(v, parent):
        nonlocal aut
        kids = []
        for w in adj[v]:
            if w != parent:
                kids.append(edge_label(v, w) + encode(w, v))
        kids.sort()
        for mult in Counter(kids).values():
            aut *= factorial(mult)
        return "(" + vertex_label(v) + "".join(kids) + ")"

    cs = centers(adj)
    if len(cs) == 1:
        return encode(cs[0], None), aut
    a, b = cs
    ca, cb = encode(a, b), encode(b, a)
    if ca == cb:
        aut *= 2
    lo, hi = sorted([ca, cb])
    return "<" + edge_label(a, b) + lo + hi + ">", aut


def _encode_stable(tree: StableTree) -> Tuple[str, int]:
    if "code" not in tree._cache:
        adj = {v: [w for w, _ in ns] for v, ns in tree.adjacency().items()}
        leaves = defaultdict(list)
        for lab, v in tree.leaf_vertex().items():
            leaves[v].append(lab)

        def label(v):
            return f"{tree.degrees[v]}" + "".join(f".{x}" for x in sorted(leaves[v]))

        tree._cache["code"] = tree_code(adj, label)
    return tree._cache["code"]


def canonical_key(tree: StableTree) -> CanonicalKey:
    """Byte string equal for two trees iff they are isomorphic stable (m, d)-trees."""
    _require_valid(tree)
    code, _ = _encode_stable(tree)
    return f"{tree.m}|{tree.d}|{code}".encode("ascii")


def automorphism_order(tree: StableTree) -> int:
    """|Aut(tree)|: automorphisms fixing every leaf label and preserving degrees."""
    _require_valid(tree)
    return _encode_stable(tree)[1]


def codimension(tree: StableTree) -> int:
    """Number of contracted (degree 0) vertices."""
    return sum(1 for k in tree.degrees.values() if k == 0)


# -- decomposition ---------------------------------------------------------------


@dataclass(frozen=True)
class EdgeSplit:
    """Result of cutting a tree at an edge ``{f, f'}``.

    Leaves of ``sigma`` are relabelled ``1..m_sigma`` in the order of their
    labels in the original tree, with the new leaf ``flag`` last; likewise for
    ``sigma_prime`` and ``flag_prime``.  ``labels``/``labels_prime`` map the
    new labels back to the original ones (``None`` for the cut flag).
    """

    sigma: StableTree
    sigma_prime: StableTree
    flag: int
    flag_prime: int
    labels: Dict[int, int | None]
    labels_prime: Dict[int, int | None]


def decompose_at_edge(tree: StableTree, edge: Tuple[int, int] | int) -> EdgeSplit:
    """Split ``tree`` at an edge, given as a flag pair or as one of its flags."""
    if isinstance(edge, tuple):
        f, g = edge
    else:
        f, g = edge, tree.involution.get(edge)
    if f not in tree.involution or tree.involution[f] != g or f == g:
        raise ValueError(f"{edge!r} is not an edge of the tree")

    adj = tree.adjacency()
    side = {tree.boundary[f]}
    stack = [tree.boundary[f]]
    while stack:
        v = stack.pop()
        for w, flag in adj[v]:
            if flag == f:
                continue
            if w not in side:
                side.add(w)
                stack.append(w)

    def half(vertices, cut_flag):
        flags = [x for x in tree.boundary if tree.boundary[x] in vertices]
        old = sorted((lab, x) for x, lab in tree.leaf_labels.items() if x in flags)
        leaf_labels = {x: i + 1 for i, (_, x) in enumerate(old)}
        leaf_labels[cut_flag] = len(old) + 1
        back: Dict[int, int | None] = {i + 1: lab for i, (lab, _) in enumerate(old)}
        back[len(old) + 1] = None
        involution = {x: tree.involution[x] for x in flags}
        involution[cut_flag] = cut_flag
        part = StableTree(
            {x: tree.boundary[x] for x in flags},
            involution,
            leaf_labels,
            {v: tree.degrees[v] for v in tree.degrees if v in vertices},
        )
        return part, back

    sigma, back = half(side, f)
    other = set(tree.degrees) - side
    sigma_prime, back_prime = half(other, g)
    return EdgeSplit(sigma, sigma_prime, f, g, back, back_prime)


def glue(split: EdgeSplit) -> StableTree:
    """Inverse of :func:`decompose_at_edge`: rejoin the two cut flags."""
    boundary = {**split.sigma.boundary, **split.sigma_prime.boundary}
    involution = {**split.sigma.involution, **split.sigma_prime.involution}
    involution[split.flag] = split.flag_prime
    involution[split.flag_prime] = split.flag
    leaf_labels = {}
    for part, back, cut in ((split.sigma, split.labels, split.flag), (split.sigma_prime, split.labels_prime, split.flag_prime)):
        for x, lab in part.leaf_labels.items():
            if x != cut:
                leaf_labels[x] = back[lab]
    return StableTree(boundary, involution, leaf_labels, {**split.sigma.degrees, **split.sigma_prime.degrees})


# -- enumeration -----------------------------------------------------------------


def free_trees(k: int) -> Iterator[Dict[int, List[int]]]:
    """Non-isomorphic free trees on ``k`` vertices as adjacency dicts."""
    if k == 1:
        yield {0: []}
        return
    if k == 2:
        yield {0: [1], 1: [0]}
        return
    for g in nx.nonisomorphic_trees(k):
        yield {v: sorted(g.neighbors(v)) for v in sorted(g.nodes)}


def compositions(total: int, parts: int, minimum: int = 0) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of ``parts`` integers >= ``minimum`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def _leaf_assignments(m: int, deficit: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Functions ``{1..m} -> vertices`` giving vertex v at least ``deficit[v]`` leaves."""
    k = len(deficit)
    need = list(deficit)
    missing = sum(need)
    choice = [0] * m

    def rec(i):
        nonlocal missing
        if m - i < missing:
            return
        if i == m:
            yield tuple(choice)
            return
        for v in range(k):
            choice[i] = v
            helped = need[v] > 0
            if helped:
                need[v] -= 1
                missing -= 1
            yield from rec(i + 1)
            if helped:
                need[v] += 1
                missing += 1

    yield from rec(0)


def max_vertices(m: int, d: int, positive_only: bool = False) -> int:
    """Upper bound on |V| for a stable (m, d)-tree."""
    if positive_only:
        return d
    # sum_v (n(v) - 2) = m - 2, contracted vertices contribute >= 1, others >= -1
    return max(1, m - 2 + 2 * d)


def enumerate_stable_trees(m: int, d: int, positive_only: bool = False) -> List[Tuple[CanonicalKey, StableTree]]:
    """One representative per isomorphism class of stable (m, d)-trees, sorted by key."""
    if d == 0 and (positive_only or m < 3):
        return []
    found: Dict[CanonicalKey, StableTree] = {}
    for k in range(1, max_vertices(m, d, positive_only) + 1):
        for adj in free_trees(k):
            tdeg = [len(adj[v]) for v in range(k)]
            for degs in compositions(d, k, 1 if positive_only else 0):
                deficit = [max(0, 3 - tdeg[v]) if degs[v] == 0 else 0 for v in range(k)]
                if sum(deficit) > m:
                    continue
                edges = [(u, v) for u in range(k) for v in adj[u] if u < v]
                for assign in _leaf_assignments(m, deficit):
                    tree = StableTree.build(
                        dict(enumerate(degs)), edges, {i + 1: assign[i] for i in range(m)}
                    )
                    key = canonical_key(tree)
                    if key not in found:
                        found[key] = tree
    return sorted(found.items())


def single_vertex_tree(m: int, d: int) -> StableTree:
    """The tree with one vertex of degree ``d`` carrying leaves ``1..m``."""
    return StableTree.build({0: d}, (), {i: 0 for i in range(1, m + 1)})
