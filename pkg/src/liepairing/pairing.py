"""The configuration pairing of dual shapes with Lie bracket expressions.

Four algorithms compute the same number:

* ``pair_expand``       -- read the coefficient in the enveloping expansion;
* ``pair_recursive``    -- recurse through brackets with the dual cobracket;
* ``pair_sigma``        -- sum over vertex-to-leaf bijections with signs
                           determined by planar order, each bijection kept
                           only when its edges cover all internal vertices;
* ``pair_right_normed`` -- the signed shuffle count, for right-normed
                           brackets paired against word duals.

The bijection sum is divided by the number of structure automorphisms of
the dual shape, which makes it match the coefficient pairing on shapes
with repeated identical branches.  ``sigma_pair_table`` evaluates the
bijection sum against every dual shape of the multidegree at once by
enumerating induced structures on leaf positions (each automorphism
orbit appears exactly once, so no division is needed there).
"""

from __future__ import annotations

import itertools

import numpy as np

from . import envelope
from .cobracket import cuts as _shape_cuts
from .enumeration import build_tree, oriented_structures, rooted_structures
from .freealg import as_combo
from .terms import Combo, LieExpr, OrientedGraph, RootedTree, Word, canonicalize_graph

ALGORITHMS = ("expand", "recursive", "sigma", "rightnormed")

_LIE_TABLES = {}


def lie_tables(expr):
    """(leaf count, leaf labels, ancestor table) for a Lie expression.

    Internal vertices are numbered in preorder, so the root has id 0;
    table[p][q] is the id of the deepest common ancestor of leaves p, q.
    """
    got = _LIE_TABLES.get(expr)
    if got is not None:
        return got
    leaves = expr.leaves()
    n = len(leaves)
    dca = [[-1] * n for _ in range(n)]
    next_id = itertools.count()

    def walk(node, offset):
        if node.is_leaf:
            return offset + 1
        vid = next(next_id)
        mid = walk(node.left, offset)
        end = walk(node.right, mid)
        for p in range(offset, mid):
            for q in range(mid, end):
                dca[p][q] = vid
                dca[q][p] = vid
        return end

    walk(expr, 0)
    table = tuple(tuple(row) for row in dca)
    arr = np.array(dca, dtype=np.int32) if n > 1 else np.zeros((1, 1), dtype=np.int32)
    got = (n, leaves, table, arr)
    _LIE_TABLES[expr] = got
    return got


def root_of(expr, p, q):
    """Id of the deepest common ancestor of two leaf positions (root is 0)."""
    n, _, table, _ = lie_tables(expr)
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError("leaf position out of range")
    if p == q:
        raise ValueError("leaf positions must differ")
    return table[p][q]


def sign_of(expr, source, target):
    """+1 iff the source leaf precedes the target leaf in planar order."""
    n = lie_tables(expr)[0]
    if not (0 <= source < n and 0 <= target < n):
        raise ValueError("leaf position out of range")
    if source == target:
        raise ValueError("leaf positions must differ")
    return 1 if source < target else -1


def _as_lie_combo(l):
    if isinstance(l, LieExpr):
        return Combo.single(l)
    if not isinstance(l, Combo):
        raise TypeError("expected a LieExpr or a combo of them")
    for t in l.coeffs:
        if not isinstance(t, LieExpr):
            raise TypeError("lie argument contains non-Lie terms")
    return l


def pair_expand(side, dual, l):
    """Pairing as a coefficient of the enveloping expansion (bilinear)."""
    dual = as_combo(dual, side)
    total = 0
    for expr, cl in _as_lie_combo(l).coeffs.items():
        exp = envelope.expand(side, expr)
        for shape, cd in dual.coeffs.items():
            c = exp.coefficient(shape)
            if c:
                total += cd * cl * c
    return total


def _singleton_label(side, shape):
    if side == "assoc":
        return shape.letters[0] if len(shape.letters) == 1 else None
    if side == "prelie":
        return shape.label if not shape.children else None
    return shape.labels[0] if len(shape.labels) == 1 else None


_REC_MEMO = {}


def _rec_basis(side, shape, expr):
    if expr.is_leaf:
        return 1 if _singleton_label(side, shape) == expr.label else 0
    key = (shape, expr)
    got = _REC_MEMO.get(key)
    if got is None:
        total = 0
        lc, rc = expr.left.content(), expr.right.content()
        for t1, t2, mult in _shape_cuts(side, shape):
            if t1.content() == lc and t2.content() == rc:
                total += mult * _rec_basis(side, t1, expr.left) * _rec_basis(side, t2, expr.right)
            if t2.content() == lc and t1.content() == rc:
                total -= mult * _rec_basis(side, t2, expr.left) * _rec_basis(side, t1, expr.right)
        _REC_MEMO[key] = got = total
    return got


def pair_recursive(side, dual, l):
    """Pairing by cobracket recursion through the bracket structure."""
    dual = as_combo(dual, side)
    total = 0
    for expr, cl in _as_lie_combo(l).coeffs.items():
        ec = expr.content()
        for shape, cd in dual.coeffs.items():
            if shape.content() == ec:
                total += cd * cl * _rec_basis(side, shape, expr)
    return total


def shape_form(side, shape):
    """(labels, edges) view of a tree or graph dual shape.

    Tree vertices are numbered in preorder; edges point away from the
    root (parent, child) for trees, (source, target) for graphs.
    """
    if side == "graph":
        return shape.labels, shape.sorted_edges()
    labels, edges = [], []

    def rec(node):
        idx = len(labels)
        labels.append(node.label)
        for k in node.children:
            edges.append((idx, rec(k)))
        return idx

    rec(shape)
    return tuple(labels), tuple(edges)


_AUT_MEMO = {}


def structure_automorphisms(side, shape):
    """Number of label-preserving self-bijections fixing the structure."""
    key = (side, shape)
    got = _AUT_MEMO.get(key)
    if got is None:
        labels, edges = shape_form(side, shape)
        eset = set(edges)
        groups = {}
        for v, g in enumerate(labels):
            groups.setdefault(g, []).append(v)
        vs = list(groups.values())
        count = 0
        for perms in itertools.product(*(itertools.permutations(g) for g in vs)):
            m = {}
            for orig, perm in zip(vs, perms):
                m.update(zip(orig, perm))
            if all((m[u], m[v]) in eset for u, v in edges):
                count += 1
        _AUT_MEMO[key] = got = count
    return got


def sigma_value(side, shape, expr, sigma):
    """Value of one vertex-to-leaf bijection: the edge sign product when the
    induced edge-to-ancestor map covers every internal vertex, else 0."""
    n, _, table, _ = lie_tables(expr)
    _, edges = shape_form(side, shape)
    full = (1 << max(n - 1, 0)) - 1
    mask = 0
    sign = 1
    for u, v in edges:
        pu, pv = sigma[u], sigma[v]
        mask |= 1 << table[pu][pv]
        if pu > pv:
            sign = -sign
    return sign if mask == full else 0


def label_preserving_bijections(labels, leaves):
    """All maps vertex id -> leaf position matching generators."""
    vgroups, pgroups = {}, {}
    for v, g in enumerate(labels):
        vgroups.setdefault(g, []).append(v)
    for p, g in enumerate(leaves):
        pgroups.setdefault(g, []).append(p)
    if sorted((g, len(vs)) for g, vs in vgroups.items()) != sorted(
        (g, len(ps)) for g, ps in pgroups.items()
    ):
        return
    items = sorted(vgroups.items())
    pools = [pgroups[g] for g, _ in items]
    for perms in itertools.product(*(itertools.permutations(pool) for pool in pools)):
        sigma = {}
        for (_, vs), perm in zip(items, perms):
            sigma.update(zip(vs, perm))
        yield sigma


def _sigma_basis(side, shape, expr):
    if shape.content() != expr.content():
        return 0
    labels, _ = shape_form(side, shape)
    leaves = expr.leaves()
    total = 0
    for sigma in label_preserving_bijections(labels, leaves):
        total += sigma_value(side, shape, expr, sigma)
    aut = structure_automorphisms(side, shape)
    if total % aut:
        raise AssertionError("bijection sum not divisible by automorphism count")
    return total // aut


def pair_sigma(side, dual, l):
    """Pairing as the automorphism-normalized bijection sum.

    Word duals are transported to ladder trees first, as the associative
    pairing factors through the preLie one.
    """
    if side == "assoc":
        return pair_sigma("prelie", envelope.i_prelie(as_combo(dual, "assoc")), l)
    dual = as_combo(dual, side)
    total = 0
    for expr, cl in _as_lie_combo(l).coeffs.items():
        for shape, cd in dual.coeffs.items():
            v = _sigma_basis(side, shape, expr)
            if v:
                total += cd * cl * v
    return total


def is_right_normed(expr):
    while not expr.is_leaf:
        if not expr.left.is_leaf:
            return False
        expr = expr.right
    return True


def _right_normed_letters(expr):
    if not is_right_normed(expr):
        raise ValueError("expression is not right-normed")
    out = []
    while not expr.is_leaf:
        out.append(expr.left.label)
        expr = expr.right
    out.append(expr.label)
    return out


def _right_normed_word(word, seq):
    n = len(seq)
    if len(word.letters) != n:
        return 0
    total = 0
    for k in range(1, n + 1):
        inc = list(range(1, k))
        dec = list(range(n, k, -1))
        sign = (-1) ** (n - k)
        for slots in itertools.combinations(range(n - 1), len(inc)):
            tau = [None] * (n - 1)
            for s, val in zip(slots, inc):
                tau[s] = val
            it = iter(dec)
            for j in range(n - 1):
                if tau[j] is None:
                    tau[j] = next(it)
            tau.append(k)
            if all(word.letters[tau[j] - 1] == seq[j] for j in range(n)):
                total += sign
    return total


def pair_right_normed(dual, l):
    """Signed count of readings of a right-normed bracket along a word.

    Reading the word left to right walks the bracket letters forward,
    skipping some, then reads the skipped letters backward; each backward
    run flips the sign.
    """
    dual = as_combo(dual, "assoc")
    total = 0
    for expr, cl in _as_lie_combo(l).coeffs.items():
        seq = _right_normed_letters(expr)
        for word, cd in dual.coeffs.items():
            v = _right_normed_word(word, seq)
            if v:
                total += cd * cl * v
    return total


def pair(algo, side, dual, l):
    """Dispatch a pairing computation by algorithm name."""
    if algo == "expand":
        return pair_expand(side, dual, l)
    if algo == "recursive":
        return pair_recursive(side, dual, l)
    if algo == "sigma":
        return pair_sigma(side, dual, l)
    if algo == "rightnormed":
        if side != "assoc":
            raise ValueError("the right-normed count is defined on the assoc side")
        return pair_right_normed(dual, l)
    raise ValueError(f"unknown algorithm: {algo!r}")


def clear_caches():
    """Drop per-run memo tables; the structure tables are kept."""
    _REC_MEMO.clear()
    _MATERIALIZE.clear()
    _LIE_TABLES.clear()
    _AUT_MEMO.clear()


# -- batch evaluation over all dual shapes of a multidegree ------------------

_STRUCT_ARRAYS = {}
_MATERIALIZE = {}


def _structure_arrays(side, n):
    key = (side, n)
    got = _STRUCT_ARRAYS.get(key)
    if got is not None:
        return got
    if side == "assoc":
        structures = list(itertools.permutations(range(n)))
        edge_lists = [tuple(zip(p[:-1], p[1:])) for p in structures]
    elif side == "prelie":
        structures = list(rooted_structures(n))
        edge_lists = [edges for _, edges in structures]
    elif side == "graph":
        structures = list(oriented_structures(n))
        edge_lists = structures
    else:
        raise ValueError(f"unknown side: {side!r}")
    src = np.array([[e[0] for e in edges] for edges in edge_lists], dtype=np.int16)
    tgt = np.array([[e[1] for e in edges] for edges in edge_lists], dtype=np.int16)
    sign = np.where((src < tgt).sum(axis=1) % 2 == (n - 1) % 2, 1, -1).astype(np.int8)
    got = (structures, src, tgt, sign)
    _STRUCT_ARRAYS[key] = got
    return got


def _materialize(side, structure, leaves, rank, sorted_leaves):
    # Structures are translated to a label-sorted vertex order first, so
    # the memo is shared between brackets of the same multidegree.
    if side == "assoc":
        return Word(tuple(leaves[p] for p in structure))
    if side == "prelie":
        root, edges = structure
        key = (sorted_leaves, rank[root], tuple(sorted((rank[s], rank[t]) for s, t in edges)))
        got = _MATERIALIZE.get(key)
        if got is None:
            got = build_tree(key[1], key[2], sorted_leaves)
            _MATERIALIZE[key] = got
        return got
    key = (sorted_leaves, tuple(sorted((rank[s], rank[t]) for s, t in structure)))
    got = _MATERIALIZE.get(key)
    if got is None:
        got = canonicalize_graph(sorted_leaves, key[1])
        _MATERIALIZE[key] = got
    return got


def sigma_pair_table(side, expr):
    """Bijection-sum pairings of expr against every dual shape at once.

    Returns the combo whose coefficient at a shape equals
    ``pair_sigma(side, shape, expr)``; shapes absent from the support
    pair to zero.  Every structure on leaf positions is enumerated, so
    the result is exhaustive for the multidegree.
    """
    if not isinstance(expr, LieExpr):
        raise TypeError("sigma_pair_table expects a basis LieExpr")
    n, leaves, _, dca = lie_tables(expr)
    if n == 1:
        if side == "assoc":
            return Combo.single(Word(leaves))
        if side == "prelie":
            return Combo.single(RootedTree(leaves[0]))
        return Combo.single(canonicalize_graph(leaves, ()))
    structures, src, tgt, sign = _structure_arrays(side, n)
    d = dca[src, tgt]
    mask = np.bitwise_or.reduce(np.left_shift(1, d), axis=1)
    hits = np.nonzero(mask == (1 << (n - 1)) - 1)[0]
    order = sorted(range(n), key=lambda p: (leaves[p], p))
    rank = [0] * n
    for newpos, p in enumerate(order):
        rank[p] = newpos
    sorted_leaves = tuple(leaves[p] for p in order)
    acc = {}
    for i in hits.tolist():
        shape = _materialize(side, structures[i], leaves, rank, sorted_leaves)
        c0 = acc.get(shape, 0) + int(sign[i])
        if c0 == 0:
            acc.pop(shape, None)
        else:
            acc[shape] = c0
    return Combo._wrap(acc)


def sigma_split_terms(side, shape, expr, sigma):
    """Per-edge factorization terms of one bijection at a top bracket.

    For expr = [x, y], cutting each shape edge splits the bijection; the
    list contains one (root-side-with-x)*(branch-with-y) minus swapped
    product per edge.  At most one entry is nonzero and the signed total
    recovers ``sigma_value``.
    """
    if expr.is_leaf:
        raise ValueError("expression must be a bracket")
    n, _, table, _ = lie_tables(expr)
    labels, edges = shape_form(side, shape)
    nv = len(labels)
    mid = expr.left.weight
    left_pos = set(range(mid))
    right_pos = set(range(mid, n))
    left_internal = {table[p][q] for p in left_pos for q in left_pos if p != q}
    right_internal = {table[p][q] for p in right_pos for q in right_pos if p != q}

    def restricted(vset, positions, internal):
        if {sigma[v] for v in vset} != positions:
            return 0
        mask_goal = internal
        seen = set()
        s = 1
        for u, v in edges:
            if u in vset and v in vset:
                pu, pv = sigma[u], sigma[v]
                seen.add(table[pu][pv])
                if pu > pv:
                    s = -s
        return s if seen == mask_goal else 0

    out = []
    for cut in edges:
        reach = {cut[1]}
        grew = True
        while grew:
            grew = False
            for u, v in edges:
                if (u, v) == cut:
                    continue
                if u in reach and v not in reach:
                    reach.add(v)
                    grew = True
                if v in reach and u not in reach:
                    reach.add(u)
                    grew = True
        branch = reach
        base = set(range(nv)) - branch
        term = restricted(base, left_pos, left_internal) * restricted(
            branch, right_pos, right_internal
        ) - restricted(branch, left_pos, left_internal) * restricted(
            base, right_pos, right_internal
        )
        out.append(term)
    return out
