"""Arity-graded operations: partial composition, quotients and dimensions.

Arity-n elements are combinations of shapes labeled bijectively by
{1..n}: permutations read as words (assoc), planar binary trees with
labeled leaves (lie), rooted trees (prelie) and oriented tree graphs
(graph).  ``compose(x, i, y)`` substitutes y into slot i with the usual
index shift: y's labels move to {i..i+m-1} and x's labels above i move
up by m-1.  Quotient maps run graph -> prelie -> assoc and the bracket
expansions embed lie into each row.
"""

from __future__ import annotations

import itertools
import math
import random

from . import envelope
from .enumeration import build_tree, shapes_of
from .terms import (
    Combo,
    LieExpr,
    OrientedGraph,
    RootedTree,
    Word,
    br,
    canonicalize_graph,
    leaf,
    rank_of_combos,
)

FAMILIES = ("assoc", "lie", "prelie", "graph")

_SHAPE_TYPES = {
    "assoc": Word,
    "lie": LieExpr,
    "prelie": RootedTree,
    "graph": OrientedGraph,
}

MAX_ENUM_ARITY = 6


def _labels_of(family, shape):
    if family == "assoc":
        return shape.letters
    if family == "lie":
        return shape.leaves()
    if family == "prelie":
        return tuple(_tree_labels(shape))
    return shape.labels


def _tree_labels(t):
    out = [t.label]
    for k in t.children:
        out.extend(_tree_labels(k))
    return out


class OperadElement:
    """An arity-n combination of {1..n}-labeled shapes of one family."""

    __slots__ = ("family", "arity", "combo")

    def __init__(self, family, arity, combo):
        if family not in FAMILIES:
            raise ValueError(f"unknown family: {family!r}")
        if not isinstance(combo, Combo):
            combo = Combo.single(combo)
        want = _SHAPE_TYPES[family]
        expected = sorted(str(j) for j in range(1, arity + 1))
        for shape in combo.coeffs:
            if not isinstance(shape, want):
                raise TypeError(f"{family} elements need {want.__name__} shapes")
            if sorted(_labels_of(family, shape)) != expected:
                raise ValueError(f"shape {shape!r} is not labeled bijectively by 1..{arity}")
        self.family = family
        self.arity = arity
        self.combo = combo

    def __add__(self, other):
        self._check_mate(other)
        return OperadElement(self.family, self.arity, self.combo + other.combo)

    def __sub__(self, other):
        self._check_mate(other)
        return OperadElement(self.family, self.arity, self.combo - other.combo)

    def __neg__(self):
        return OperadElement(self.family, self.arity, -self.combo)

    def __rmul__(self, c):
        return OperadElement(self.family, self.arity, self.combo.scale(c))

    def _check_mate(self, other):
        if not isinstance(other, OperadElement):
            raise TypeError("expected an OperadElement")
        if (self.family, self.arity) != (other.family, other.arity):
            raise ValueError("family/arity mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, OperadElement)
            and self.family == other.family
            and self.arity == other.arity
            and self.combo == other.combo
        )

    def __hash__(self):
        return hash((self.family, self.arity, self.combo))

    def __repr__(self):
        return f"OperadElement({self.family}, {self.arity}, {self.combo!r})"


def element(family, arity, shape_or_combo):
    return OperadElement(family, arity, shape_or_combo)


def _shift_label(g, i, m):
    v = int(g)
    return str(v + m - 1) if v > i else g


def _inner_label(g, i):
    return str(int(g) + i - 1)


def _compose_word(xw, i, yw, m):
    out = []
    for g in xw.letters:
        if int(g) == i:
            out.extend(_inner_label(h, i) for h in yw.letters)
        else:
            out.append(_shift_label(g, i, m))
    return Combo.single(Word(out))


def _compose_lie(xe, i, ye, m):
    def rec(node):
        if node.is_leaf:
            if int(node.label) == i:
                return _relabel_lie(ye, lambda g: _inner_label(g, i))
            return leaf(_shift_label(node.label, i, m))
        return LieExpr(left=rec(node.left), right=rec(node.right))

    return Combo.single(rec(xe))


def _relabel_lie(e, f):
    if e.is_leaf:
        return leaf(f(e.label))
    return LieExpr(left=_relabel_lie(e.left, f), right=_relabel_lie(e.right, f))


def _tree_arrays(t):
    labels, parents = [], []

    def rec(node, parent):
        idx = len(labels)
        labels.append(node.label)
        parents.append(parent)
        for k in node.children:
            rec(k, idx)

    rec(t, None)
    return labels, parents


def _compose_tree(xt, i, yt, m):
    lx, px = _tree_arrays(xt)
    ly, py = _tree_arrays(yt)
    v = lx.index(str(i))
    nx, ny = len(lx), len(ly)
    xmap = {}
    labels = []
    for j in range(nx):
        if j == v:
            continue
        xmap[j] = len(labels)
        labels.append(_shift_label(lx[j], i, m))
    ybase = len(labels)
    labels.extend(_inner_label(g, i) for g in ly)
    fixed = []
    for j in range(nx):
        if j == v or px[j] is None or px[j] == v:
            continue
        fixed.append((xmap[px[j]], xmap[j]))
    for j in range(ny):
        if py[j] is not None:
            fixed.append((ybase + py[j], ybase + j))
    if px[v] is not None:
        fixed.append((xmap[px[v]], ybase))
    root = ybase if px[v] is None else xmap[next(j for j in range(nx) if px[j] is None)]
    kids = [j for j in range(nx) if px[j] == v]
    acc = {}
    for assign in itertools.product(range(ny), repeat=len(kids)):
        edges = fixed + [(ybase + a, xmap[c]) for a, c in zip(assign, kids)]
        t = build_tree(root, edges, labels)
        acc[t] = acc.get(t, 0) + 1
    return Combo._wrap(acc)


def _compose_graph(xg, i, yg, m):
    v = xg.labels.index(str(i))
    nx, ny = len(xg.labels), len(yg.labels)
    xmap = {}
    labels = []
    for j in range(nx):
        if j == v:
            continue
        xmap[j] = len(labels)
        labels.append(_shift_label(xg.labels[j], i, m))
    ybase = len(labels)
    labels.extend(_inner_label(g, i) for g in yg.labels)
    fixed = [(ybase + s, ybase + t) for s, t in yg.edges]
    touching = []
    for s, t in xg.sorted_edges():
        if s == v:
            touching.append((True, t))
        elif t == v:
            touching.append((False, s))
        else:
            fixed.append((xmap[s], xmap[t]))
    acc = {}
    for assign in itertools.product(range(ny), repeat=len(touching)):
        edges = list(fixed)
        for (v_is_source, other), a in zip(touching, assign):
            if v_is_source:
                edges.append((ybase + a, xmap[other]))
            else:
                edges.append((xmap[other], ybase + a))
        g = canonicalize_graph(tuple(labels), edges)
        acc[g] = acc.get(g, 0) + 1
    return Combo._wrap(acc)


_COMPOSERS = {
    "assoc": _compose_word,
    "lie": _compose_lie,
    "prelie": _compose_tree,
    "graph": _compose_graph,
}


def compose(x, i, y):
    """Substitute y into slot i of x (bilinear; result arity n+m-1)."""
    if not isinstance(x, OperadElement) or not isinstance(y, OperadElement):
        raise TypeError("compose expects OperadElements")
    if x.family != y.family:
        raise ValueError("family mismatch")
    if not 1 <= i <= x.arity:
        raise ValueError(f"slot {i} out of range for arity {x.arity}")
    base = _COMPOSERS[x.family]
    m = y.arity
    acc = Combo.zero()
    for xs, cx in x.combo.coeffs.items():
        for ys, cy in y.combo.coeffs.items():
            acc = acc + base(xs, i, ys, m).scale(cx * cy)
    return OperadElement(x.family, x.arity + m - 1, acc)


def relabel(x, perm):
    """Apply a permutation of {1..n} to the labels of an element.

    ``perm`` maps old label j to perm[j-1] (a sequence of ints).
    """
    n = x.arity
    table = {str(j): str(perm[j - 1]) for j in range(1, n + 1)}
    if sorted(table.values()) != sorted(str(j) for j in range(1, n + 1)):
        raise ValueError("not a permutation of 1..n")

    def relabel_shape(shape):
        if x.family == "assoc":
            return Word(tuple(table[g] for g in shape.letters))
        if x.family == "lie":
            return _relabel_lie(shape, lambda g: table[g])
        if x.family == "prelie":
            def rec(t):
                return RootedTree(table[t.label], tuple(rec(k) for k in t.children))

            return rec(shape)
        return canonicalize_graph(tuple(table[g] for g in shape.labels), shape.edges)

    return OperadElement(x.family, n, x.combo.map_terms(relabel_shape))


def quotient_to_assoc(x):
    """Ladder trees to their root-to-leaf permutation; other trees to 0."""
    if x.family != "prelie":
        raise ValueError("expected a prelie element")
    return OperadElement("assoc", x.arity, envelope.q_prelie(x.combo))


def quotient_to_prelie(x):
    """Rooted graphs to rooted trees; non-rooted graphs to 0."""
    if x.family != "graph":
        raise ValueError("expected a graph element")
    return OperadElement("prelie", x.arity, envelope.q_graph(x.combo))


def _as_lie_element(x):
    if isinstance(x, OperadElement):
        if x.family != "lie":
            raise ValueError("expected a lie element")
        return x
    if isinstance(x, LieExpr):
        return OperadElement("lie", x.weight, Combo.single(x))
    raise TypeError("expected a lie OperadElement or LieExpr")


def envelope_to(family, x):
    """Expand a lie element into the assoc/prelie/graph family."""
    x = _as_lie_element(x)
    return OperadElement(family, x.arity, envelope.expand(family, x.combo))


def envelope_to_assoc(x):
    return envelope_to("assoc", x)


def envelope_to_prelie(x):
    return envelope_to("prelie", x)


def envelope_to_graph(x):
    return envelope_to("graph", x)


def same_operation(x, y):
    """Equality of operations; lie elements compare via their word expansion."""
    if not isinstance(y, OperadElement) or (x.family, x.arity) != (y.family, y.arity):
        return False
    if x.family == "lie":
        return envelope_to_assoc(x).combo == envelope_to_assoc(y).combo
    return x.combo == y.combo


def _distinct_md(n):
    return tuple(sorted((str(j), 1) for j in range(1, n + 1)))


def dims(family, n):
    """Number of basis shapes of arity n (for lie, the operad dimension)."""
    if not 1 <= n <= MAX_ENUM_ARITY:
        raise ValueError(f"arity must be between 1 and {MAX_ENUM_ARITY}")
    if family == "lie":
        return math.factorial(n - 1)
    return len(shapes_of(family, _distinct_md(n)))


def basis(family, n):
    """All arity-n basis elements of an algebra family."""
    if not 1 <= n <= MAX_ENUM_ARITY:
        raise ValueError(f"arity must be between 1 and {MAX_ENUM_ARITY}")
    if family == "lie":
        raise ValueError("lie has no canonical shape basis here; use bracket expressions")
    return [OperadElement(family, n, s) for s in shapes_of(family, _distinct_md(n))]


def binary_generated_dim(family, n):
    """Dimension of the span of iterated compositions of arity-2 elements
    (closed under label permutations) inside arity n."""
    if not 2 <= n <= 4:
        raise ValueError("binary-generated span is enumerated for arities 2..4")
    if family == "lie":
        spans = {2: [OperadElement("lie", 2, br) for br in (_lie_brackets2())]}
    else:
        spans = {2: basis(family, 2)}
    for k in range(3, n + 1):
        fresh = []
        for a in range(2, k):
            b = k + 1 - a
            if b < 2:
                continue
            for x in spans[a]:
                for y in spans[b]:
                    for i in range(1, a + 1):
                        fresh.append(compose(x, i, y))
        closed = []
        for z in fresh:
            for perm in itertools.permutations(range(1, k + 1)):
                closed.append(relabel(z, perm))
        spans[k] = closed
    vectors = []
    for z in spans[n]:
        if z.family == "lie":
            vectors.append(envelope_to_assoc(z).combo)
        else:
            vectors.append(z.combo)
    return rank_of_combos(vectors)


def _lie_brackets2():
    return [br("1", "2"), br("2", "1")]


def random_element(family, arity, rng, max_terms=2):
    """A small random element (for axiom spot checks)."""
    if family == "lie":
        shapes = []
        for _ in range(max_terms):
            perm = list(rng.sample([str(j) for j in range(1, arity + 1)], arity))
            expr = leaf(perm[0])
            for g in perm[1:]:
                expr = LieExpr(left=expr, right=leaf(g)) if rng.random() < 0.5 else LieExpr(
                    left=leaf(g), right=expr
                )
            shapes.append(expr)
    else:
        pool = list(shapes_of(family, _distinct_md(arity)))
        shapes = [rng.choice(pool) for _ in range(max_terms)]
    acc = Combo.zero()
    for s in shapes:
        acc = acc + Combo.single(s, rng.choice([-2, -1, 1, 2]))
    return OperadElement(family, arity, acc)


def check_axioms(family, trials=20, seed=0):
    """Spot-check the sequential and parallel composition axioms.

    Returns (ok, number of comparisons).
    """
    rng = random.Random(seed)
    comparisons = 0
    for _ in range(trials):
        nx = rng.randint(2, 3)
        ny = rng.randint(2, 3)
        nz = rng.randint(2, 3)
        x = random_element(family, nx, rng)
        y = random_element(family, ny, rng)
        z = random_element(family, nz, rng)
        i = rng.randint(1, nx)
        j = rng.randint(1, ny)
        lhs = compose(compose(x, i, y), i + j - 1, z)
        rhs = compose(x, i, compose(y, j, z))
        comparisons += 1
        if not same_operation(lhs, rhs):
            return False, comparisons
        if nx >= 2:
            i1 = rng.randint(1, nx - 1)
            j1 = rng.randint(i1 + 1, nx)
            lhs = compose(compose(x, i1, y), j1 + ny - 1, z)
            rhs = compose(compose(x, j1, z), i1, y)
            comparisons += 1
            if not same_operation(lhs, rhs):
                return False, comparisons
    return True, comparisons
