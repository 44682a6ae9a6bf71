"""Naive reference counts built from edge lists and Python sets.

These deliberately share nothing with the package kernels beyond the
Graph's edge list, so agreement is meaningful.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction


def adjacency(G):
    nbrs = {v: set() for v in range(G.n)}
    for u, v in G.edges():
        nbrs[u].add(v)
        nbrs[v].add(u)
    return nbrs


def neighborhoods(G, closed):
    nbrs = adjacency(G)
    return [sorted(nbrs[v] | ({v} if closed else set())) for v in range(G.n)]


def legal_colorings(G, k, accepts, closed, weights=None):
    """Loop over all k^n colorings; test each neighborhood's multiset."""
    hoods = neighborhoods(G, closed)
    total = 0 if weights is None else Fraction(0)
    for phi in itertools.product(range(k), repeat=G.n):
        ok = True
        for hood in hoods:
            counts = Counter(phi[w] for w in hood)
            if not accepts(tuple(counts.get(c, 0) for c in range(k))):
                ok = False
                break
        if ok:
            if weights is None:
                total += 1
            else:
                w = Fraction(1)
                for c in phi:
                    w *= weights[c]
                total += w
    return total


def functions_with_legal_image(r, k, accepts, weights=None):
    total = 0 if weights is None else Fraction(0)
    for f in itertools.product(range(k), repeat=r):
        counts = Counter(f)
        if accepts(tuple(counts.get(c, 0) for c in range(k))):
            if weights is None:
                total += 1
            else:
                w = Fraction(1)
                for c in f:
                    w *= weights[c]
                total += w
    return total


def subsets(n):
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            yield set(S)


def is_dominating(G, S, strong=False):
    nbrs = adjacency(G)
    covered = set() if strong else set(S)
    for v in S:
        covered |= nbrs[v]
    return covered == set(range(G.n))


def is_independent(G, S):
    return all(not (u in S and v in S) for u, v in G.edges())


def subset_counts(G):
    n = G.n
    ds = sds = minimal = ind = maximal = 0
    by_size = [0] * (n + 1)
    for S in subsets(n):
        if is_dominating(G, S):
            ds += 1
            by_size[len(S)] += 1
            if all(not is_dominating(G, S - {v}) for v in S):
                minimal += 1
        if is_dominating(G, S, strong=True):
            sds += 1
        if is_independent(G, S):
            ind += 1
            if all(not is_independent(G, S | {v}) for v in set(range(n)) - S):
                maximal += 1
    return {"ds": ds, "sds": sds, "minimal-ds": minimal, "is": ind, "mis": maximal, "ds_by_size": by_size}


def hom(G, edges_H, q, weights=None):
    """Homomorphisms into H given by its (possibly looped) edge set."""
    E = {(a, b) for a, b in edges_H} | {(b, a) for a, b in edges_H}
    total = 0 if weights is None else Fraction(0)
    for phi in itertools.product(range(q), repeat=G.n):
        if all((phi[u], phi[v]) in E for u, v in G.edges()):
            if weights is None:
                total += 1
            else:
                w = Fraction(1)
                for c in phi:
                    w *= weights[c]
                total += w
    return total


def xhom(G, edges_H, q):
    E = {(a, b) for a, b in edges_H} | {(b, a) for a, b in edges_H}
    nbrs = adjacency(G)
    return sum(
        1
        for phi in itertools.product(range(q), repeat=G.n)
        if all(any((phi[v], phi[w]) in E for w in nbrs[v]) for v in range(G.n))
    )


def hypergraph_proper_colorings(edges, n, q):
    """Colorings of a hypergraph (edges as vertex lists) with no monochromatic edge."""
    return sum(
        1
        for phi in itertools.product(range(q), repeat=n)
        if all(len({phi[v] for v in e}) >= 2 for e in edges)
    )


H_IND_EDGES = [(0, 1), (1, 1)]


def e_q_edges(q):
    return [(v, v) for v in range(q)]


def k_q_edges(q):
    return list(itertools.combinations(range(q), 2))
