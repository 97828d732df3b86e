"""Products of the free associative, preLie and graph algebras.

All products are bilinear: they accept basis shapes or combinations and
return combinations.  Commutator brackets of each product give the three
Lie algebra structures used by the enveloping expansions.
"""

from __future__ import annotations

import itertools

from .terms import (
    Combo,
    OrientedGraph,
    RootedTree,
    Word,
    canonicalize_graph,
    check_generator,
)

SIDES = ("assoc", "prelie", "graph")

_SIDE_SHAPE = {"assoc": Word, "prelie": RootedTree, "graph": OrientedGraph}


def as_combo(x, side=None):
    """Promote a basis shape to a one-term combination; validate the side."""
    if not isinstance(x, Combo):
        x = Combo.single(x)
    if side is not None:
        want = _SIDE_SHAPE[side]
        for t in x.coeffs:
            if not isinstance(t, want):
                raise TypeError(
                    f"side {side!r} expects {want.__name__} terms, got {type(t).__name__}"
                )
    return x


def _bilinear(base_product):
    def apply(x, y):
        acc = {}
        for u, cu in x.coeffs.items():
            for v, cv in y.coeffs.items():
                c = cu * cv
                for t, k in base_product(u, v).coeffs.items():
                    c0 = acc.get(t, 0) + c * k
                    if c0 == 0:
                        acc.pop(t, None)
                    else:
                        acc[t] = c0
        return Combo._wrap(acc)

    return apply


def concat(u, v):
    """Concatenation of two words."""
    return Word(u.letters + v.letters)


_SHUFFLE_MEMO = {}


def _shuffle_words(u, v):
    key = (u, v)
    got = _SHUFFLE_MEMO.get(key)
    if got is None:
        acc = {}
        for w in _interleavings(u.letters, v.letters):
            word = Word(w)
            acc[word] = acc.get(word, 0) + 1
        got = _SHUFFLE_MEMO[key] = Combo._wrap(acc)
    return got


def _interleavings(a, b):
    if not a:
        yield b
        return
    if not b:
        yield a
        return
    for rest in _interleavings(a[1:], b):
        yield (a[0],) + rest
    for rest in _interleavings(a, b[1:]):
        yield (b[0],) + rest


def shuffle(u, v):
    """Shuffle product; C(|u|+|v|, |u|) terms counted with multiplicity."""
    return _bilinear(_shuffle_words)(as_combo(u, "assoc"), as_combo(v, "assoc"))


def attach_everywhere(t, sub):
    """All trees obtained by adding ``sub`` as a new child of a vertex of t.

    One entry per vertex of ``t``, in preorder; entries may repeat when
    different vertices give isomorphic results.
    """
    out = [RootedTree(t.label, t.children + (sub,))]
    for i, k in enumerate(t.children):
        for k2 in attach_everywhere(k, sub):
            out.append(RootedTree(t.label, t.children[:i] + (k2,) + t.children[i + 1 :]))
    return out


_PRELIE_MEMO = {}


def prelie_basis_product(x, y):
    """x <| y on basis trees: attach the root of y below each vertex of x."""
    key = (x, y)
    got = _PRELIE_MEMO.get(key)
    if got is None:
        acc = {}
        for t in attach_everywhere(x, y):
            acc[t] = acc.get(t, 0) + 1
        got = _PRELIE_MEMO[key] = Combo._wrap(acc)
    return got


def prelie_product(x, y):
    """The preLie product on tree combinations (bilinear)."""
    return _bilinear(prelie_basis_product)(as_combo(x, "prelie"), as_combo(y, "prelie"))


_GRAPH_MEMO = {}


def graph_basis_product(g, h):
    """Sum over all ways of adding one directed edge from g to h."""
    key = (g, h)
    got = _GRAPH_MEMO.get(key)
    if got is None:
        ng = len(g.labels)
        labels = g.labels + h.labels
        base = list(g.edges) + [(s + ng, t + ng) for s, t in h.edges]
        acc = {}
        for v, w in itertools.product(range(ng), range(len(h.labels))):
            gg = canonicalize_graph(labels, base + [(v, ng + w)])
            acc[gg] = acc.get(gg, 0) + 1
        got = _GRAPH_MEMO[key] = Combo._wrap(acc)
    return got


def graph_product(g, h):
    """The graph product on combinations (bilinear)."""
    return _bilinear(graph_basis_product)(as_combo(g, "graph"), as_combo(h, "graph"))


def _concat_combo(x, y):
    return _bilinear(lambda u, v: Combo.single(concat(u, v)))(
        as_combo(x, "assoc"), as_combo(y, "assoc")
    )


def product(kind, x, y):
    """Dispatch on the product kind: concat, shuffle, prelie or graph."""
    if kind == "concat":
        return _concat_combo(x, y)
    if kind == "shuffle":
        return shuffle(x, y)
    if kind == "prelie":
        return prelie_product(x, y)
    if kind == "graph":
        return graph_product(x, y)
    raise ValueError(f"unknown product kind: {kind!r}")


def bracket(side, x, y):
    """Commutator of the side's product."""
    if side == "assoc":
        return _concat_combo(x, y) - _concat_combo(y, x)
    if side == "prelie":
        return prelie_product(x, y) - prelie_product(y, x)
    if side == "graph":
        return graph_product(x, y) - graph_product(y, x)
    raise ValueError(f"unknown side: {side!r}")


def clear_caches():
    """Drop the memoized basis products."""
    _SHUFFLE_MEMO.clear()
    _PRELIE_MEMO.clear()
    _GRAPH_MEMO.clear()


def is_lyndon(w):
    """True iff the word is strictly smaller than all its nontrivial rotations."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    n = len(letters)
    return all(letters < letters[i:] + letters[:i] for i in range(1, n))


def lyndon_words(alphabet, max_len):
    """All Lyndon words of length 1..max_len, in lexicographic order."""
    alphabet = sorted(check_generator(g) for g in alphabet)
    found = []
    for n in range(1, max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            if is_lyndon(letters):
                found.append(Word(letters))
    found.sort(key=lambda w: w.letters)
    return found
