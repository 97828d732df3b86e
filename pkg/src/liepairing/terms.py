"""Canonical basis shapes and exact sparse linear combinations.

Four shape families share one coefficient machinery:

* ``Word``          -- sequences of generators (free associative side)
* ``RootedTree``    -- unordered labeled rooted trees (preLie side)
* ``OrientedGraph`` -- trees with oriented edges (graph side)
* ``LieExpr``       -- planar binary bracket expressions (Lie side)

All values are immutable after construction and canonical: structurally
equal shapes compare and hash equal, so they can key dictionaries.
Coefficients are exact (``int`` or ``fractions.Fraction``); no floats.
Dual functionals are represented by the same combinations (the starred
basis is in bijection with the basis).
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

_GEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0-9]+")

Scalar = int | Fraction
Multidegree = tuple[tuple[str, int], ...]


def check_generator(name):
    """Validate a generator name; return it.

    Names are identifier text; bare numerals are also allowed so that
    arity-graded shapes can be labeled 1..n.  Ordering is lexicographic
    on the name.
    """
    if not isinstance(name, str) or not _GEN_RE.fullmatch(name):
        raise ValueError(f"bad generator name: {name!r}")
    return name


def check_scalar(c):
    if not isinstance(c, (int, Fraction)) or isinstance(c, bool):
        raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")
    return c


def merge_content(*parts):
    """Merge multidegrees (sorted tuples of (generator, count))."""
    acc = {}
    for part in parts:
        for g, k in part:
            acc[g] = acc.get(g, 0) + k
    return tuple(sorted(acc.items()))


class Word:
    """A nonempty sequence of generators."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters):
        letters = tuple(letters)
        if not letters:
            raise ValueError("words must have length >= 1")
        for g in letters:
            check_generator(g)
        self.letters = letters
        self._hash = hash(("w", letters))

    @property
    def weight(self):
        return len(self.letters)

    def content(self):
        acc = {}
        for g in self.letters:
            acc[g] = acc.get(g, 0) + 1
        return tuple(sorted(acc.items()))

    def sort_key(self):
        return (len(self.letters), self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if all(len(g) == 1 for g in self.letters):
            return "".join(self.letters)
        return " ".join(self.letters)


class RootedTree:
    """A rooted tree with labeled vertices and unordered children.

    Children are stored sorted by canonical key, so structurally equal
    non-planar trees compare equal.  ``key`` is the recursive encoding
    ``label(childkey,...,childkey)`` with child keys sorted.
    """

    __slots__ = ("label", "children", "key", "weight", "_hash", "_content")

    def __init__(self, label, children=()):
        check_generator(label)
        kids = tuple(sorted(children, key=lambda t: t.key))
        for k in kids:
            if not isinstance(k, RootedTree):
                raise TypeError("children must be RootedTree values")
        self.label = label
        self.children = kids
        if kids:
            self.key = label + "(" + ",".join(k.key for k in kids) + ")"
        else:
            self.key = label
        self.weight = 1 + sum(k.weight for k in kids)
        self._hash = hash(("t", self.key))
        self._content = None

    def content(self):
        if self._content is None:
            self._content = merge_content(
                ((self.label, 1),), *(k.content() for k in self.children)
            )
        return self._content

    def sort_key(self):
        return (self.weight, self.key)

    def is_ladder(self):
        """True if every vertex has at most one child."""
        t = self
        while t.children:
            if len(t.children) > 1:
                return False
            t = t.children[0]
        return True

    def ladder_word(self):
        """The root-to-leaf word of a ladder tree."""
        if not self.is_ladder():
            raise ValueError("not a ladder tree")
        letters, t = [self.label], self
        while t.children:
            t = t.children[0]
            letters.append(t.label)
        return Word(letters)

    def vertices(self):
        """All subtree handles in a stable (preorder, canonical) order."""
        out = [self]
        for k in self.children:
            out.extend(k.vertices())
        return out

    def __eq__(self, other):
        return isinstance(other, RootedTree) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if not self.children:
            return self.label
        return self.label + "(" + ",".join(repr(k) for k in self.children) + ")"


def canonical_key(t):
    """Canonical text key of a rooted tree; equal keys iff isomorphic."""
    return t.key


def ladder(letters):
    """The ladder tree w1(w2(...wn)) of a letter sequence."""
    letters = list(letters)
    if not letters:
        raise ValueError("empty ladder")
    t = RootedTree(letters[-1])
    for g in reversed(letters[:-1]):
        t = RootedTree(g, (t,))
    return t


class OrientedGraph:
    """A connected graph, acyclic as an undirected graph, with oriented edges.

    Every basis graph is a tree with directed edges (|E| = |V| - 1; each
    edge a bridge).  Instances are always stored in canonical form: the
    vertex labels are sorted and the edge set is the lexicographically
    minimal one over all consistent relabelings.  Use ``graph()`` or
    ``canonicalize_graph()`` to build instances.
    """

    __slots__ = ("labels", "edges", "weight", "_hash", "_content", "_skey")

    def __init__(self, labels, edges, _canonical=False):
        if not _canonical:
            raise ValueError("use graph()/canonicalize_graph() to build graphs")
        self.labels = labels
        self.edges = edges
        self.weight = len(labels)
        self._skey = (len(labels), labels, tuple(sorted(edges)))
        self._hash = hash(("g", self._skey))
        self._content = None

    def content(self):
        if self._content is None:
            acc = {}
            for g in self.labels:
                acc[g] = acc.get(g, 0) + 1
            self._content = tuple(sorted(acc.items()))
        return self._content

    def sort_key(self):
        return self._skey

    def sorted_edges(self):
        return self._skey[2]

    def root_vertex(self):
        """The vertex every edge points away from, or None."""
        n = len(self.labels)
        indeg = [0] * n
        out = [[] for _ in range(n)]
        for s, t in self.edges:
            indeg[t] += 1
            out[s].append(t)
        roots = [v for v in range(n) if indeg[v] == 0]
        if len(roots) != 1:
            return None
        seen, stack = {roots[0]}, [roots[0]]
        while stack:
            v = stack.pop()
            for t in out[v]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return roots[0] if len(seen) == n else None

    def __eq__(self, other):
        return isinstance(other, OrientedGraph) and self._skey == other._skey

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._skey < other._skey

    def __repr__(self):
        vs = ",".join(f"v{i + 1}={g}" for i, g in enumerate(self.labels))
        if not self.edges:
            return vs
        es = ",".join(f"v{s + 1}->v{t + 1}" for s, t in self.sorted_edges())
        return vs + "; " + es


def _graph_centers(n, adj):
    """Centers of an undirected tree given adjacency lists."""
    if n == 1:
        return [0]
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            deg[v] = 0
            for w, _ in adj[v]:
                if deg[w] > 1:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return layer


def _structure_key(labels, edges):
    """Isomorphism-complete key for an oriented tree (center-rooted encoding)."""
    n = len(labels)
    adj = [[] for _ in range(n)]
    for s, t in edges:
        adj[s].append((t, ">"))
        adj[t].append((s, "<"))

    def rkey(v, parent):
        parts = sorted(d + rkey(w, v) for w, d in adj[v] if w != parent)
        if parts:
            return labels[v] + "(" + ",".join(parts) + ")"
        return labels[v]

    return min(rkey(c, -1) for c in _graph_centers(n, adj))


_GRAPH_CANON = {}


def canonicalize_graph(labels, edges):
    """Canonical representative of a labeled oriented tree.

    Accepts an ``OrientedGraph`` or raw ``(labels, edges)`` with edges as
    (source index, target index) pairs.  Rejects graphs that are
    disconnected or contain an undirected cycle (including self-loops and
    parallel/anti-parallel edges).  Idempotent; isomorphic inputs return
    the identical instance.
    """
    if isinstance(labels, OrientedGraph):
        return labels
    labels = tuple(labels)
    for g in labels:
        check_generator(g)
    n = len(labels)
    if n == 0:
        raise ValueError("graphs must have at least one vertex")
    edges = set(map(tuple, edges))
    for s, t in edges:
        if not (0 <= s < n and 0 <= t < n):
            raise ValueError(f"edge ({s},{t}) out of range")
        if s == t:
            raise ValueError("self-loops are not allowed")
    pairs = {frozenset(e) for e in edges}
    if len(pairs) != len(edges):
        raise ValueError("parallel or anti-parallel edges are not allowed")
    if len(edges) != n - 1:
        raise ValueError("not a tree: need exactly |V|-1 edges (connected, no undirected cycle)")
    adj = [[] for _ in range(n)]
    for s, t in edges:
        adj[s].append((t, 1))
        adj[t].append((s, 0))
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w, _ in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise ValueError("graph is not connected")

    skey = _structure_key(labels, edges)
    cached = _GRAPH_CANON.get(skey)
    if cached is not None:
        return cached

    # Lexicographic minimization of the edge set over all relabelings that
    # sort the vertex labels; searched once per isomorphism class.
    sorted_labels = tuple(sorted(labels))
    slots = {}
    for i, g in enumerate(sorted_labels):
        slots.setdefault(g, []).append(i)
    groups = {}
    for v, g in enumerate(labels):
        groups.setdefault(g, []).append(v)
    best = None
    items = sorted(groups.items())
    for perms in itertools.product(*(itertools.permutations(vs) for _, vs in items)):
        relab = [0] * n
        for (g, _), perm in zip(items, perms):
            for slot, v in zip(slots[g], perm):
                relab[v] = slot
        cand = tuple(sorted((relab[s], relab[t]) for s, t in edges))
        if best is None or cand < best:
            best = cand
    result = OrientedGraph(sorted_labels, frozenset(best), _canonical=True)
    _GRAPH_CANON[skey] = result
    return result


def graph(labels, edges):
    """Build a canonical oriented-tree graph from labels and edge pairs."""
    return canonicalize_graph(labels, edges)


def single_vertex(label):
    return canonicalize_graph((label,), ())


class LieExpr:
    """A Lie bracket expression: a leaf generator or [left, right].

    Planar: the leaf order is meaningful.
    """

    __slots__ = ("label", "left", "right", "weight", "_hash", "_content", "_leaves")

    def __init__(self, label=None, left=None, right=None):
        if label is not None:
            check_generator(label)
            if left is not None or right is not None:
                raise ValueError("a leaf has no subexpressions")
            self.weight = 1
            self._hash = hash(("l", label))
        else:
            if not (isinstance(left, LieExpr) and isinstance(right, LieExpr)):
                raise TypeError("bracket arguments must be LieExpr values")
            self.weight = left.weight + right.weight
            self._hash = hash(("b", left._hash, right._hash))
        self.label = label
        self.left = left
        self.right = right
        self._content = None
        self._leaves = None

    @property
    def is_leaf(self):
        return self.label is not None

    def content(self):
        if self._content is None:
            if self.is_leaf:
                self._content = ((self.label, 1),)
            else:
                self._content = merge_content(self.left.content(), self.right.content())
        return self._content

    def leaves(self):
        """Leaf labels in planar left-to-right order."""
        if self._leaves is None:
            if self.is_leaf:
                self._leaves = (self.label,)
            else:
                self._leaves = self.left.leaves() + self.right.leaves()
        return self._leaves

    def sort_key(self):
        return (self.weight, repr(self))

    def __eq__(self, other):
        if not isinstance(other, LieExpr):
            return False
        if self._hash != other._hash:
            return False
        if self.is_leaf or other.is_leaf:
            return self.label == other.label
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if self.is_leaf:
            return self.label
        return f"[{self.left!r},{self.right!r}]"


def leaf(label):
    return LieExpr(label=label)


def br(left, right):
    """Bracket of two Lie expressions (or generator names)."""
    if isinstance(left, str):
        left = leaf(left)
    if isinstance(right, str):
        right = leaf(right)
    return LieExpr(left=left, right=right)


def left_normed(letters):
    """The bracket [[...[x1,x2],...],xn] of a letter sequence."""
    letters = list(letters)
    expr = leaf(letters[0])
    for g in letters[1:]:
        expr = br(expr, leaf(g))
    return expr


def right_normed(letters):
    """The bracket [x1,[x2,[...,xn]]] of a letter sequence."""
    letters = list(letters)
    expr = leaf(letters[-1])
    for g in reversed(letters[:-1]):
        expr = br(leaf(g), expr)
    return expr


def content_of(shape):
    """Multidegree of a single basis shape."""
    return shape.content()


def sort_key(term):
    """Deterministic ordering key for combo terms (shapes or shape pairs)."""
    if isinstance(term, tuple):
        return tuple(sort_key(part) for part in term)
    return (_FAMILY_RANK[type(term)],) + tuple(term.sort_key())


_FAMILY_RANK = {Word: 0, RootedTree: 1, OrientedGraph: 2, LieExpr: 3}


class Combo:
    """Finitely supported linear combination of canonical terms.

    Terms are basis shapes (or ordered pairs of shapes, for tensors);
    values are nonzero exact rationals.  Also used for dual functionals.
    Treat instances as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, data=()):
        coeffs = {}
        items = data.items() if isinstance(data, dict) else data
        for term, c in items:
            check_scalar(c)
            c0 = coeffs.get(term, 0) + c
            if c0 == 0:
                coeffs.pop(term, None)
            else:
                coeffs[term] = c0
        self.coeffs = coeffs

    @classmethod
    def _wrap(cls, coeffs):
        # internal: adopt a dict already free of zeros
        out = object.__new__(cls)
        out.coeffs = coeffs
        return out

    @classmethod
    def single(cls, term, c=1):
        check_scalar(c)
        return cls._wrap({term: c} if c != 0 else {})

    @classmethod
    def zero(cls):
        return cls._wrap({})

    def coefficient(self, term):
        """Coefficient of a term; 0 when absent."""
        return self.coeffs.get(term, 0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def items(self):
        return self.coeffs.items()

    def terms(self):
        """Terms in canonical order."""
        return sorted(self.coeffs, key=sort_key)

    def sorted_items(self):
        return [(t, self.coeffs[t]) for t in self.terms()]

    def __add__(self, other):
        if not isinstance(other, Combo):
            return NotImplemented
        out = dict(self.coeffs)
        for term, c in other.coeffs.items():
            c0 = out.get(term, 0) + c
            if c0 == 0:
                out.pop(term, None)
            else:
                out[term] = c0
        return Combo._wrap(out)

    def __sub__(self, other):
        if not isinstance(other, Combo):
            return NotImplemented
        out = dict(self.coeffs)
        for term, c in other.coeffs.items():
            c0 = out.get(term, 0) - c
            if c0 == 0:
                out.pop(term, None)
            else:
                out[term] = c0
        return Combo._wrap(out)

    def __neg__(self):
        return Combo._wrap({t: -c for t, c in self.coeffs.items()})

    def scale(self, c):
        check_scalar(c)
        if c == 0:
            return Combo.zero()
        return Combo._wrap({t: c * v for t, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, Combo) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def multidegree(self):
        """Common multidegree of all terms; error when inhomogeneous or zero."""
        degs = {content_of(t) for t in self.coeffs}
        if len(degs) != 1:
            raise ValueError(f"combo is not homogeneous (saw {len(degs)} multidegrees)")
        return degs.pop()

    def split_by_multidegree(self):
        """Homogeneous parts, keyed by multidegree."""
        parts = {}
        for t, c in self.coeffs.items():
            parts.setdefault(content_of(t), {})[t] = c
        return {d: Combo._wrap(p) for d, p in sorted(parts.items())}

    def map_terms(self, f):
        """Linear extension of a map on basis terms.

        ``f`` returns a Combo, a term, or None (kill the term).
        """
        out = {}
        for t, c in self.coeffs.items():
            img = f(t)
            if img is None:
                continue
            if isinstance(img, Combo):
                for u, d in img.coeffs.items():
                    c0 = out.get(u, 0) + c * d
                    if c0 == 0:
                        out.pop(u, None)
                    else:
                        out[u] = c0
            else:
                c0 = out.get(img, 0) + c
                if c0 == 0:
                    out.pop(img, None)
                else:
                    out[img] = c0
        return Combo._wrap(out)

    def __repr__(self):
        from .cli import format_combo

        return format_combo(self)


def combo(*pairs):
    """Build a combination from (coefficient, term) arguments."""
    return Combo((term, c) for c, term in pairs)


def rank_of_combos(combos):
    """Rank over the rationals of the span of the given combinations.

    Works on the Gram matrix of exact dot products, so the cost is
    governed by the number of combinations rather than their support.
    """
    vecs = [c.coeffs for c in combos if c]
    k = len(vecs)
    if k == 0:
        return 0
    gram = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            a, b = vecs[i], vecs[j]
            if len(b) < len(a):
                a, b = b, a
            s = 0
            for t, c in a.items():
                d = b.get(t)
                if d is not None:
                    s += c * d
            gram[i][j] = gram[j][i] = s
    # Positive semidefinite, so diagonal pivoting is complete: once every
    # remaining diagonal entry is zero the whole remaining block is zero.
    rank = 0
    active = list(range(k))
    while active:
        piv = next((i for i in active if gram[i][i] != 0), None)
        if piv is None:
            break
        rank += 1
        active.remove(piv)
        p = gram[piv][piv]
        for i in active:
            num = gram[i][piv]
            if num == 0:
                continue
            f = Fraction(num) / Fraction(p)
            for j in active:
                gram[i][j] -= f * gram[piv][j]
    return rank


def tensor(left, right, c=1):
    """A single left (x) right tensor term."""
    return Combo.single((left, right), c)


def tensor_swap(t):
    """Swap the two tensor slots of a tensor combination."""
    return Combo._wrap({(b, a): c for (a, b), c in t.coeffs.items()})


def as_dual(shape):
    """Read a basis shape as the dual functional on its span."""
    return Combo.single(shape)
