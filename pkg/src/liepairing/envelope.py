"""Enveloping expansions of Lie expressions and the maps between sides.

A bracket expression expands to a polynomial in each of the three free
algebras (leaf -> one-vertex shape, bracket -> commutator).  The quotient
maps q (ladders to words, rooted graphs to trees) and their duals i
(words to ladders, trees to away-oriented graphs) connect the sides.
"""

from __future__ import annotations

from .terms import Combo, LieExpr, OrientedGraph, RootedTree, Word, canonicalize_graph, ladder
from . import freealg

_EXPAND_MEMO = {"assoc": {}, "prelie": {}, "graph": {}}


def _leaf_shape(side, label):
    if side == "assoc":
        return Word((label,))
    if side == "prelie":
        return RootedTree(label)
    return canonicalize_graph((label,), ())


def _expand_basis(side, expr):
    memo = _EXPAND_MEMO[side]
    got = memo.get(expr)
    if got is None:
        if expr.is_leaf:
            got = Combo.single(_leaf_shape(side, expr.label))
        else:
            got = freealg.bracket(side, _expand_basis(side, expr.left), _expand_basis(side, expr.right))
        memo[expr] = got
    return got


def expand(side, expr):
    """Polynomial of a Lie expression (or combo of them) in the side's algebra."""
    if isinstance(expr, LieExpr):
        return _expand_basis(side, expr)
    acc = Combo.zero()
    for l, c in expr.coeffs.items():
        acc = acc + _expand_basis(side, l).scale(c)
    return acc


def expand_assoc(expr):
    return expand("assoc", expr)


def expand_prelie(expr):
    return expand("prelie", expr)


def expand_graph(expr):
    return expand("graph", expr)


def clear_caches():
    """Drop the memoized expansions."""
    for memo in _EXPAND_MEMO.values():
        memo.clear()


def q_prelie(t):
    """Ladder trees to their root-to-leaf word; all other trees to 0."""
    if isinstance(t, RootedTree):
        t = Combo.single(t)
    return t.map_terms(lambda r: r.ladder_word() if r.is_ladder() else None)


def _graph_to_tree(g):
    root = g.root_vertex()
    if root is None:
        return None
    kids = {}
    for s, t in g.edges:
        kids.setdefault(s, []).append(t)

    def rec(v):
        return RootedTree(g.labels[v], tuple(rec(w) for w in kids.get(v, ())))

    return rec(root)


def q_graph(g):
    """Rooted graphs (all edges away from one vertex) to rooted trees; others to 0."""
    if isinstance(g, OrientedGraph):
        g = Combo.single(g)
    return g.map_terms(_graph_to_tree)


def i_prelie(w):
    """Dual of q_prelie: the ladder tree of a word (linear on combos)."""
    if isinstance(w, Word):
        return ladder(w.letters)
    return w.map_terms(lambda u: ladder(u.letters))


def _tree_to_graph(t):
    labels = []
    edges = []

    def rec(node, parent):
        idx = len(labels)
        labels.append(node.label)
        if parent is not None:
            edges.append((parent, idx))
        for k in node.children:
            rec(k, idx)

    rec(t, None)
    return canonicalize_graph(labels, edges)


def i_graph(t):
    """Dual of q_graph: orient every tree edge away from the root (linear)."""
    if isinstance(t, RootedTree):
        return _tree_to_graph(t)
    return t.map_terms(_tree_to_graph)
