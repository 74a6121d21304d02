"""Brute-force reference computations that share no code paths with the library.

Graphs here are frozensets of (u, v) tuples; isomorphism is decided by
networkx or by explicit orbit unions, never by canonical codes.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

import networkx as nx


def all_pairs(n):
    """Pairs in the frozen colex order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(u, v) for v in range(n) for u in range(v)]


def to_nx(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def orbit_partition(n):
    """Isomorphism classes of all labeled graphs on n vertices via union-find.

    Adjacent transpositions generate S_n, so unioning every graph with its
    images under them yields exactly the orbits.
    """
    pairs = all_pairs(n)
    index = {p: i for i, p in enumerate(pairs)}
    N = len(pairs)
    parent = list(range(1 << N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    swaps = []
    for s in range(n - 1):
        perm = list(range(n))
        perm[s], perm[s + 1] = perm[s + 1], perm[s]
        swaps.append([index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs])
    for mask in range(1 << N):
        for image_of in swaps:
            img = 0
            for b in range(N):
                if mask >> b & 1:
                    img |= 1 << image_of[b]
            a, c = find(mask), find(img)
            if a != c:
                parent[a] = c
    classes = {}
    for mask in range(1 << N):
        classes.setdefault(find(mask), []).append(mask)
    return list(classes.values())


def class_counts_by_m(n):
    counts = Counter()
    for members in orbit_partition(n):
        counts[bin(members[0]).count("1")] += 1
    return counts


def deck_graphs(n, edges, kind, i):
    """List every member of a deck as an edge frozenset."""
    edges = frozenset(edges)
    non_edges = [p for p in all_pairs(n) if p not in edges]
    out = []
    if kind == "edge":
        for X in combinations(sorted(edges), i):
            out.append(edges - set(X))
        return out
    for X in combinations(sorted(edges), i):
        base = edges - set(X)
        pool = non_edges if kind == "perturbed" else [p for p in all_pairs(n) if p not in base]
        for Y in combinations(pool, i):
            out.append(base | set(Y))
    return out


def multiset_by_isomorphism(n, graphs, representatives):
    """Counts of ``graphs`` against a list of representative edge sets (networkx isomorphism)."""
    reps = [to_nx(n, r) for r in representatives]
    counts = [0] * len(reps)
    for g in graphs:
        h = to_nx(n, g)
        matches = [k for k, r in enumerate(reps) if nx.is_isomorphic(h, r)]
        assert len(matches) == 1
        counts[matches[0]] += 1
    return counts
