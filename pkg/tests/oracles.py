"""Slow, independent reference computations used only by the tests."""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


# -- stable trees by exhaustive labelled generation ----------------------------------


def prufer_trees(k):
    """Every labelled tree on vertices 0..k-1, as a sorted edge tuple."""
    if k == 1:
        yield ()
        return
    if k == 2:
        yield ((0, 1),)
        return
    for seq in itertools.product(range(k), repeat=k - 2):
        degree = [1] * k
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(k) if degree[v] == 1)
            edges.append(tuple(sorted((leaf, x))))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(k) if degree[v] == 1]
        edges.append((u, w))
        yield tuple(sorted(edges))


def _canonical(k, edges, degs, leafmap):
    # minimum over all vertex relabellings preserving the obvious invariants
    val = [0] * k
    for u, w in edges:
        val[u] += 1
        val[w] += 1
    sig = [(degs[v], tuple(sorted(l for l, x in enumerate(leafmap) if x == v)), val[v]) for v in range(k)]
    groups = {}
    for v in range(k):
        groups.setdefault(sig[v], []).append(v)
    order = sorted(groups)
    best = None
    slots = []
    for s in order:
        slots.extend([s] * len(groups[s]))
    for choice in itertools.product(*(itertools.permutations(groups[s]) for s in order)):
        perm = {}
        pos = 0
        for block in choice:
            for v in block:
                perm[v] = pos
                pos += 1
        form = (
            tuple(sorted(tuple(sorted((perm[u], perm[w]))) for u, w in edges)),
            tuple(perm[x] for x in leafmap),
            tuple(degs[v] for v in sorted(range(k), key=perm.get)),
        )
        if best is None or form < best:
            best = form
    return best


def brute_force_classes(m, d, positive_only=False, max_vertices=None):
    """Isomorphism classes of stable (m, d)-trees, as {canonical form: |Aut|}."""
    kmax = m - 2 + 2 * d if not positive_only else d
    kmax = max(kmax, 1)
    if max_vertices is not None:
        kmax = min(kmax, max_vertices)
    found = {}
    for k in range(1, kmax + 1):
        for edges in prufer_trees(k):
            val = [0] * k
            for u, w in edges:
                val[u] += 1
                val[w] += 1
            low = 1 if positive_only else 0
            for degs in itertools.product(range(low, d + 1), repeat=k):
                if sum(degs) != d:
                    continue
                need = [max(0, 3 - val[v]) if degs[v] == 0 else 0 for v in range(k)]
                if sum(need) > m:
                    continue
                for leafmap in itertools.product(range(k), repeat=m):
                    got = [0] * k
                    for x in leafmap:
                        got[x] += 1
                    if any(got[v] < need[v] for v in range(k)):
                        continue
                    key = (k, _canonical(k, edges, degs, leafmap))
                    found[key] = found.get(key, 0) + 1
    # each class is hit k!/|Aut| times
    return {key: factorial(key[0]) // hits for key, hits in found.items()}


def brute_force_automorphisms(tree):
    """|Aut| of a StableTree by trying every vertex permutation."""
    verts = list(tree.degrees)
    edges = {frozenset(e) for e in tree.edge_vertices()}
    leaves = tree.leaf_vertex()
    count = 0
    for image in itertools.permutations(verts):
        p = dict(zip(verts, image))
        if any(tree.degrees[v] != tree.degrees[p[v]] for v in verts):
            continue
        if any(p[v] != v for v in leaves.values()) and any(leaves[l] != p[leaves[l]] for l in leaves):
            continue
        if {frozenset((p[u], p[w])) for u, w in map(tuple, edges)} != edges:
            continue
        count += 1
    return count


def schroeder(m):
    """Trees with m labelled leaves and all internal valences >= 3 (OEIS A000311)."""
    # a(n+1) = (n+2) a(n) + 2 sum_{k=2}^{n-1} C(n,k) a(k) a(n-k+1)
    a = {0: 0, 1: 1, 2: 1}
    for n in range(2, m):
        s = sum(comb(n, k) * a[k] * a[n - k + 1] for k in range(2, n))
        a[n + 1] = (n + 2) * a[n] + 2 * s
    return a[m]


# -- classical plane curve counts ------------------------------------------------------


@lru_cache(maxsize=None)
def kontsevich(d):
    """Rational plane curves of degree d through 3d - 1 general points."""
    if d == 1:
        return 1
    total = 0
    for a in range(1, d):
        b = d - a
        total += kontsevich(a) * kontsevich(b) * a * a * b * (
            b * comb(3 * d - 4, 3 * a - 2) - a * comb(3 * d - 4, 3 * a - 1)
        )
    return total


# -- Schubert calculus on G(2, N) ------------------------------------------------------


def pieri_product(k, n_ambient, classes):
    """Degree of the product of special Schubert classes sigma_c on G(k, n_ambient).

    Partitions live in a k x (n_ambient - k) box; the answer is the coefficient
    of the top class."""
    width = n_ambient - k
    state = {tuple([0] * k): 1}
    for c in classes:
        nxt = {}
        for lam, coeff in state.items():
            for mu in _pieri(lam, c, width):
                nxt[mu] = nxt.get(mu, 0) + coeff
        state = nxt
    return state.get(tuple([width] * k), 0)


def _pieri(lam, c, width):
    # add c boxes to lam, no two in the same column
    k = len(lam)

    def rec(i, left, acc):
        if i == k:
            if left == 0:
                yield tuple(acc)
            return
        upper = width if i == 0 else lam[i - 1]
        for x in range(lam[i], min(upper, lam[i] + left) + 1):
            yield from rec(i + 1, left - (x - lam[i]), acc + [x])

    yield from rec(0, c, [])


def contact_lines(n, codims):
    """Contact lines in P^n meeting general linear spaces of the given codimensions.

    Contact lines form the isotropic Grassmannian, a hyperplane section of
    G(2, n+1); meeting a codim-c space is the special class sigma_{c-1}."""
    return pieri_product(2, n + 1, [1] + [c - 1 for c in codims])


# -- torus fixed graphs ---------------------------------------------------------------


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _graph_form(k, edges, degs, col, marks, perm):
    return (
        tuple(sorted((min(perm[u], perm[w]), max(perm[u], perm[w]), x) for (u, w), x in zip(edges, degs))),
        tuple(col[v] for v in sorted(range(k), key=perm.__getitem__)),
        tuple(perm[v] for v in marks),
    )


def brute_force_fixed_graphs(n, d, m):
    """Fixed-point graphs of degree d with m marks: {canonical form: |Aut| * prod(edge degrees)}."""
    found = {}
    for k in range(2, d + 2):
        perms = list(itertools.permutations(range(k)))
        for edges in prufer_trees(k):
            for degs in _compositions(d, k - 1):
                for col in itertools.product(range(n + 1), repeat=k):
                    if any(col[u] == col[w] for u, w in edges):
                        continue
                    for marks in itertools.product(range(k), repeat=m):
                        forms = [_graph_form(k, edges, degs, col, marks, p) for p in perms]
                        form = min(forms)
                        if form in found:
                            continue
                        here = _graph_form(k, edges, degs, col, marks, tuple(range(k)))
                        aut = sum(1 for f in forms if f == here)
                        prod_deg = 1
                        for x in degs:
                            prod_deg *= x
                        found[form] = aut * prod_deg
    return found


def canonical_fixed_graph(graph):
    """Brute-force canonical form of a localization.FixedGraph."""
    t = graph.tree
    k = t.n_vertices
    return min(
        _graph_form(k, t.edges, t.edge_degrees, graph.vertex_labels, graph.mark_assignment, p)
        for p in itertools.permutations(range(k))
    )
