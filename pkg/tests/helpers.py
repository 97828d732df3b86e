"""Shared random generators and brute-force oracles for the test suite."""

import itertools
import random

from liepairing.terms import Combo, LieExpr, RootedTree, Word, canonicalize_graph

ABC = ("a", "b", "c")


def random_word(rng, alphabet=ABC, max_len=5, min_len=1):
    n = rng.randint(min_len, max_len)
    return Word(tuple(rng.choice(alphabet) for _ in range(n)))


def random_tree_labeled(rng, labels):
    # grow by repeatedly attaching a fresh leaf below a random vertex
    t = RootedTree(labels[0])
    for g in labels[1:]:
        t = rng.choice(_attachments(t, RootedTree(g)))
    return t


def random_tree(rng, alphabet=ABC, weight=None, max_weight=5):
    if weight is None:
        weight = rng.randint(1, max_weight)
    return random_tree_labeled(rng, [rng.choice(alphabet) for _ in range(weight)])


def _attachments(t, sub):
    out = [RootedTree(t.label, t.children + (sub,))]
    for i, k in enumerate(t.children):
        for k2 in _attachments(k, sub):
            out.append(RootedTree(t.label, t.children[:i] + (k2,) + t.children[i + 1 :]))
    return out


def random_graph_labeled(rng, labels):
    labels = tuple(labels)
    edges = []
    for v in range(1, len(labels)):
        u = rng.randrange(v)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    return canonicalize_graph(labels, edges)


def random_graph(rng, alphabet=ABC, weight=None, max_weight=5):
    if weight is None:
        weight = rng.randint(1, max_weight)
    return random_graph_labeled(rng, tuple(rng.choice(alphabet) for _ in range(weight)))


def random_lie(rng, alphabet=ABC, weight=None, max_weight=4):
    if weight is None:
        weight = rng.randint(1, max_weight)
    letters = [rng.choice(alphabet) for _ in range(weight)]

    def build(seq):
        if len(seq) == 1:
            return LieExpr(label=seq[0])
        k = rng.randint(1, len(seq) - 1)
        return LieExpr(left=build(seq[:k]), right=build(seq[k:]))

    return build(letters)


def random_shape(rng, side, **kw):
    if side == "assoc":
        return random_word(rng, **kw)
    if side == "prelie":
        return random_tree(rng, **kw)
    return random_graph(rng, **kw)


def random_combo(rng, side, terms=2, **kw):
    acc = Combo.zero()
    for _ in range(terms):
        acc = acc + Combo.single(random_shape(rng, side, **kw), rng.choice([-2, -1, 1, 2]))
    return acc


def interleavings(a, b):
    """All ways to interleave two sequences (brute-force shuffle oracle)."""
    if not a:
        yield tuple(b)
        return
    if not b:
        yield tuple(a)
        return
    for rest in interleavings(a[1:], b):
        yield (a[0],) + rest
    for rest in interleavings(a, b[1:]):
        yield (b[0],) + rest


def trees_isomorphic(s, t):
    """Label-preserving rooted-tree isomorphism by brute force."""
    if s.label != t.label or len(s.children) != len(t.children):
        return False
    for perm in itertools.permutations(t.children):
        if all(trees_isomorphic(a, b) for a, b in zip(s.children, perm)):
            return True
    return False


def all_trees(alphabet, max_weight):
    """Every labeled rooted tree up to the weight, by leaf attachment."""
    level = [RootedTree(g) for g in alphabet]
    out = {t.key: t for t in level}
    current = {t.key: t for t in level}
    for _ in range(max_weight - 1):
        nxt = {}
        for t in current.values():
            for g in alphabet:
                for t2 in _attachments(t, RootedTree(g)):
                    nxt[t2.key] = t2
        out.update(nxt)
        current = nxt
    return [t for t in out.values() if t.weight <= max_weight]
