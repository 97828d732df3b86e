"""Lie-coalgebra presentations: kernel machinery and dimension audits.

The dual of each free algebra surjects onto the dual of the free Lie
algebra; a dual element is in the kernel exactly when it pairs to zero
with a spanning set of bracket expressions.  Membership is decided
semantically that way.  For graph duals with distinct labels there is
also a normal form: long graphs (oriented paths from a base generator),
reachable by subtracting a kernel element.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import envelope, pairing
from .enumeration import unique_permutations
from .freealg import as_combo, shuffle
from .terms import (
    Combo,
    OrientedGraph,
    RootedTree,
    Word,
    canonicalize_graph,
    check_generator,
    ladder,
    left_normed,
    rank_of_combos,
)


@lru_cache(maxsize=None)
def spanning_brackets(md):
    """Left-normed brackets over all arrangements of the multidegree.

    The classical spanning family of the Lie component: one bracket
    [[..[x1,x2],..],xn] per distinct permutation of the letters.
    """
    letters = [g for g, k in md for _ in range(k)]
    return tuple(left_normed(p) for p in unique_permutations(letters))


def kernel_generators(side, labels):
    """The local kernel generators on two or three distinct labels.

    Two labels: the symmetrized pair (anti-symmetry for trees, an edge
    plus its reversal for graphs, the two-letter shuffle for words).
    Three labels: the three-term cyclic identities (and, on the preLie
    side, the anti-symmetry pair with a third vertex grafted on top).
    """
    labels = tuple(check_generator(g) for g in labels)
    if len(set(labels)) != len(labels):
        raise ValueError("kernel generators need distinct labels")
    if len(labels) == 2:
        a, b = labels
        if side == "assoc":
            return [shuffle(Word((a,)), Word((b,)))]
        if side == "prelie":
            return [Combo.single(ladder((a, b))) + Combo.single(ladder((b, a)))]
        if side == "graph":
            return [
                Combo.single(canonicalize_graph((a, b), [(0, 1)]))
                + Combo.single(canonicalize_graph((a, b), [(1, 0)]))
            ]
        raise ValueError(f"unknown side: {side!r}")
    if len(labels) == 3:
        a, b, c = labels
        if side == "assoc":
            return [
                shuffle(Word((a,)), Word((b, c))),
                shuffle(Word((a, b)), Word((c,))),
            ]
        if side == "prelie":
            cyclic = (
                Combo.single(ladder((a, b, c)))
                + Combo.single(ladder((b, c, a)))
                + Combo.single(ladder((c, a, b)))
            )
            lifted = Combo.single(ladder((a, b, c))) + Combo.single(
                RootedTree(b, (RootedTree(a), RootedTree(c)))
            )
            return [cyclic, lifted]
        if side == "graph":
            return [
                Combo.single(canonicalize_graph((a, b, c), [(0, 1), (1, 2)]))
                + Combo.single(canonicalize_graph((a, b, c), [(1, 2), (2, 0)]))
                + Combo.single(canonicalize_graph((a, b, c), [(0, 1), (2, 0)]))
            ]
        raise ValueError(f"unknown side: {side!r}")
    raise ValueError("kernel generators are defined for 2 or 3 labels")


def _is_simple(t):
    content = t.content()
    return all(k == 1 for _, k in content)


def _attach_at_label(t, label, sub):
    hits = []

    def rec(node):
        kids = tuple(rec(k) for k in node.children)
        if node.label == label:
            hits.append(node)
            return RootedTree(node.label, kids + (sub,))
        return RootedTree(node.label, kids)

    out = rec(t)
    if len(hits) != 1:
        raise ValueError(f"label {label!r} must occur exactly once, found {len(hits)}")
    return out


def graft_below_label(kernel, label, sub):
    """Attach ``sub`` below the vertex labeled ``label`` in every term.

    Kernel terms must be simple (all labels distinct) and each must carry
    the label; grafting the same subtree at the same-labeled vertices
    maps kernel elements to kernel elements.
    """
    kernel = as_combo(kernel, "prelie")
    for t in kernel.coeffs:
        if not _is_simple(t):
            raise ValueError(f"kernel term {t!r} is not simple")
    return kernel.map_terms(lambda t: _attach_at_label(t, label, sub))


def graft_onto_vertex(host, at_label, kernel):
    """Attach every kernel term below the ``at_label`` vertex of ``host``.

    Requires the kernel terms to be simple with a common root label and
    ``at_label`` to occur exactly once in the host tree.
    """
    kernel = as_combo(kernel, "prelie")
    roots = {t.label for t in kernel.coeffs}
    if len(roots) > 1:
        raise ValueError("kernel terms must share a root label")
    for t in kernel.coeffs:
        if not _is_simple(t):
            raise ValueError(f"kernel term {t!r} is not simple")
    acc = Combo.zero()
    for t, c in kernel.coeffs.items():
        acc = acc + Combo.single(_attach_at_label(host, at_label, t), c)
    return acc


def kernel_member(side, dual):
    """True iff the dual pairs to zero with every spanning bracket.

    Inhomogeneous input is split by multidegree; every part must vanish.
    """
    dual = as_combo(dual, side)
    for md, part in dual.split_by_multidegree().items():
        for expr in spanning_brackets(md):
            if pairing.pair_expand(side, part, expr) != 0:
                return False
    return True


def long_graph(base, rest):
    """The oriented path base -> w2 -> ... -> wn."""
    labels = (base,) + tuple(rest)
    return canonicalize_graph(labels, [(i, i + 1) for i in range(len(labels) - 1)])


def long_graph_reduce(gamma, base):
    """Rewrite a distinct-label graph dual as a combination of long graphs.

    The coefficient of the long path through w2..wn is the pairing with
    the left-normed bracket on (base, w2, .., wn); the difference between
    the input and the result is a kernel element.
    """
    gamma = as_combo(gamma, "graph")
    md = gamma.multidegree()
    if any(k != 1 for _, k in md):
        raise ValueError("long-graph reduction needs distinct labels")
    letters = [g for g, _ in md]
    if base not in letters:
        raise ValueError(f"base generator {base!r} does not occur")
    rest = [g for g in letters if g != base]
    acc = Combo.zero()
    for perm in itertools.permutations(rest):
        c = pairing.pair_sigma("graph", gamma, left_normed((base,) + perm))
        if c:
            acc = acc + Combo.single(long_graph(base, perm), c)
    return acc


def lie_dual_rank(side, md):
    """Rank of the pairing matrix of all dual shapes against the spanning
    brackets; equals the dimension of the Lie component."""
    return rank_of_combos([envelope.expand(side, expr) for expr in spanning_brackets(md)])
