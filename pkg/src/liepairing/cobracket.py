"""Anti-commutative cobrackets on dual words, trees and graphs.

Words are cut at every position, trees and graphs at every edge.  The
multiplicity of a cut pair is the coefficient of the original shape in
the product of the pieces (the coproduct is the exact dual of the side's
product): for shapes that repeat an identical branch, several edges give
the same pair but the product produces the shape only once, so a plain
per-edge sum would over-count.  Each pair (t1, t2) then contributes
antisymmetrically, t1 (x) t2 - t2 (x) t1.
"""

from __future__ import annotations

from .terms import Combo, RootedTree, Word, canonicalize_graph
from .freealg import as_combo, graph_basis_product, prelie_basis_product

_CUT_MEMO = {}


def _word_cuts(w):
    out = []
    for k in range(1, len(w.letters)):
        out.append((Word(w.letters[:k]), Word(w.letters[k:]), 1))
    return tuple(out)


def _tree_cut_pairs(t):
    # every edge in turn: (tree minus branch, branch); duplicates collapse later
    pairs = []
    for i, c in enumerate(t.children):
        rest = t.children[:i] + t.children[i + 1 :]
        pairs.append((RootedTree(t.label, rest), c))
        for c1, c2 in _tree_cut_pairs(c):
            pairs.append((RootedTree(t.label, rest + (c1,)), c2))
    return pairs


def _tree_cuts(t):
    out = []
    for t1, t2 in set(_tree_cut_pairs(t)):
        n = prelie_basis_product(t1, t2).coefficient(t)
        out.append((t1, t2, n))
    return tuple(out)


def _graph_cuts(g):
    n = len(g.labels)
    pairs = set()
    for cut in g.edges:
        adj = [[] for _ in range(n)]
        for s, t in g.edges:
            if (s, t) != cut:
                adj[s].append(t)
                adj[t].append(s)
        comp = [None] * n
        for start, mark in ((cut[0], 0), (cut[1], 1)):
            stack = [start]
            comp[start] = mark
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if comp[w] is None:
                        comp[w] = mark
                        stack.append(w)
        sides = []
        for mark in (0, 1):
            verts = [v for v in range(n) if comp[v] == mark]
            index = {v: i for i, v in enumerate(verts)}
            labels = tuple(g.labels[v] for v in verts)
            edges = [(index[s], index[t]) for s, t in g.edges if (s, t) != cut and comp[s] == mark]
            sides.append(canonicalize_graph(labels, edges))
        pairs.add((sides[0], sides[1]))
    out = []
    for g1, g2 in pairs:
        mult = graph_basis_product(g1, g2).coefficient(g)
        out.append((g1, g2, mult))
    return tuple(out)


def cuts(side, shape):
    """Cut pairs (t1, t2, multiplicity) of a basis shape, cached."""
    key = (side, shape)
    got = _CUT_MEMO.get(key)
    if got is None:
        if side == "assoc":
            got = _word_cuts(shape)
        elif side == "prelie":
            got = _tree_cuts(shape)
        elif side == "graph":
            got = _graph_cuts(shape)
        else:
            raise ValueError(f"unknown side: {side!r}")
        _CUT_MEMO[key] = got
    return got


def clear_caches():
    """Drop the memoized cut tables."""
    _CUT_MEMO.clear()


def cobracket(side, dual):
    """The anti-commutative cobracket of a dual combination (or basis shape)."""
    dual = as_combo(dual, side)
    acc = {}
    for shape, c in dual.coeffs.items():
        for t1, t2, mult in cuts(side, shape):
            for key, val in (((t1, t2), c * mult), ((t2, t1), -c * mult)):
                c0 = acc.get(key, 0) + val
                if c0 == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = c0
    return Combo._wrap(acc)


def cobracket_assoc(dual):
    return cobracket("assoc", dual)


def cobracket_prelie(dual):
    return cobracket("prelie", dual)


def cobracket_graph(dual):
    return cobracket("graph", dual)
