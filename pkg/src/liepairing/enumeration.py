"""Exhaustive enumeration of small structures and basis shapes.

Everything here is desk scale (weights <= 8 or so): labeled trees come
from Prufer sequences, orientations from edge sign masks, and shape
lists per multidegree from scanning those structures with a fixed label
vector and deduplicating canonical forms.
"""

from __future__ import annotations

import heapq
import itertools
from functools import lru_cache

from .terms import OrientedGraph, RootedTree, Word, canonicalize_graph, sort_key


def unique_permutations(items):
    """Distinct permutations of a multiset, in lexicographic order."""
    pool = sorted(items)
    n = len(pool)
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        prev = None
        for i, x in enumerate(remaining):
            if x == prev:
                continue
            prev = x
            rec(prefix + [x], remaining[:i] + remaining[i + 1 :])

    rec([], pool)
    return out


@lru_cache(maxsize=None)
def labeled_trees(n):
    """All undirected trees on vertices 0..n-1, as edge tuples (n^(n-2) trees)."""
    if n == 1:
        return ((),)
    if n == 2:
        return ((((0, 1)),) ,)
    trees = []
    for seq in itertools.product(range(n), repeat=n - 2):
        deg = [1] * n
        for v in seq:
            deg[v] += 1
        heap = [v for v in range(n) if deg[v] == 1]
        heapq.heapify(heap)
        edges = []
        for v in seq:
            u = heapq.heappop(heap)
            edges.append((u, v))
            deg[v] -= 1
            if deg[v] == 1:
                heapq.heappush(heap, v)
        u = heapq.heappop(heap)
        v = heapq.heappop(heap)
        edges.append((u, v))
        trees.append(tuple(edges))
    return tuple(trees)


@lru_cache(maxsize=None)
def rooted_structures(n):
    """All rooted trees on vertices 0..n-1 as (root, ((parent, child), ...))."""
    out = []
    for edges in labeled_trees(n):
        adj = [[] for _ in range(n)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        for root in range(n):
            oriented = []
            stack = [(root, -1)]
            while stack:
                v, parent = stack.pop()
                for w in adj[v]:
                    if w != parent:
                        oriented.append((v, w))
                        stack.append((w, v))
            out.append((root, tuple(oriented)))
    return tuple(out)


@lru_cache(maxsize=None)
def oriented_structures(n):
    """All oriented trees on vertices 0..n-1 (n^(n-2) * 2^(n-1) edge tuples)."""
    out = []
    for edges in labeled_trees(n):
        m = len(edges)
        for mask in range(1 << m):
            out.append(
                tuple(
                    (a, b) if not (mask >> i) & 1 else (b, a)
                    for i, (a, b) in enumerate(edges)
                )
            )
    return tuple(out)


def build_tree(root, parent_edges, labels):
    """RootedTree for a rooted structure with a per-vertex label vector."""
    kids = {}
    for p, c in parent_edges:
        kids.setdefault(p, []).append(c)

    def rec(v):
        return RootedTree(labels[v], tuple(rec(w) for w in kids.get(v, ())))

    return rec(root)


def _letters(md):
    return [g for g, k in md for _ in range(k)]


def multidegrees(alphabet, max_weight):
    """All multidegrees over the alphabet with 1 <= weight <= max_weight."""
    alphabet = sorted(alphabet)
    out = []

    def rec(i, remaining, acc):
        if i == len(alphabet):
            if acc and remaining == 0:
                out.append(tuple(acc))
            return
        for k in range(remaining + 1):
            rec(i + 1, remaining - k, acc + [(alphabet[i], k)] if k else acc)

    for w in range(1, max_weight + 1):
        rec(0, w, [])
    return out


@lru_cache(maxsize=None)
def words_of(md):
    """All basis words of a multidegree, in lexicographic order."""
    return tuple(Word(p) for p in unique_permutations(_letters(md)))


@lru_cache(maxsize=None)
def trees_of(md):
    """All basis rooted trees of a multidegree, canonically ordered."""
    labels = sorted(_letters(md))
    n = len(labels)
    seen = {}
    for root, edges in rooted_structures(n):
        t = build_tree(root, edges, labels)
        seen[t.key] = t
    return tuple(sorted(seen.values(), key=sort_key))


@lru_cache(maxsize=None)
def _graphs_of_pattern(counts):
    # counts: sorted tuple of multiplicities; placeholder letters g0, g1, ...
    labels = []
    for i, k in enumerate(counts):
        labels.extend([f"g{i}"] * k)
    labels.sort()
    n = len(labels)
    seen = set()
    for edges in oriented_structures(n):
        seen.add(canonicalize_graph(labels, edges))
    return tuple(sorted(seen, key=sort_key))


@lru_cache(maxsize=None)
def graphs_of(md):
    """All basis oriented-tree graphs of a multidegree, canonically ordered.

    Scans every oriented structure once per multiplicity pattern, then
    transports to the requested letters.
    """
    counts = tuple(sorted((k for _, k in md), reverse=True))
    base = _graphs_of_pattern(counts)
    gens = sorted(md, key=lambda gk: (-gk[1], gk[0]))
    rename = {f"g{i}": g for i, (g, _) in enumerate(gens)}
    out = set()
    for g in base:
        out.add(canonicalize_graph(tuple(rename[x] for x in g.labels), g.edges))
    assert len(out) == len(base)
    return tuple(sorted(out, key=sort_key))


def shapes_of(side, md):
    """Basis shapes of a multidegree on one side (assoc, prelie or graph)."""
    if side == "assoc":
        return words_of(md)
    if side == "prelie":
        return trees_of(md)
    if side == "graph":
        return graphs_of(md)
    raise ValueError(f"unknown side: {side!r}")
