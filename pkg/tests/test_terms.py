import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import all_trees, random_graph, trees_isomorphic
from liepairing.terms import (
    Combo,
    RootedTree,
    Word,
    canonical_key,
    canonicalize_graph,
    check_generator,
    ladder,
)


def t(label, *children):
    return RootedTree(label, children)


def test_generator_names():
    assert check_generator("a_1") == "a_1"
    assert check_generator("7") == "7"
    for bad in ("", "a-b", "a b", "(", None):
        with pytest.raises((ValueError, TypeError)):
            check_generator(bad)


def test_word_basics():
    w = Word(("a", "b", "a"))
    assert w.weight == 3
    assert w.content() == (("a", 2), ("b", 1))
    assert repr(w) == "aba"
    assert repr(Word(("x1", "y"))) == "x1 y"
    with pytest.raises(ValueError):
        Word(())


def test_canonical_key_examples():
    assert canonical_key(t("a", t("b"), t("c"))) == "a(b,c)"
    assert t("a", t("b"), t("c")) == t("a", t("c"), t("b"))
    assert canonical_key(t("a")) == "a"
    assert t("a", t("b", t("d")), t("c")) == t("a", t("c"), t("b", t("d")))


def test_canonical_key_matches_brute_force_isomorphism():
    trees = all_trees(("a", "b"), 6)
    by_key = {}
    for s in trees:
        by_key.setdefault(s.key, []).append(s)
    # equal keys within a weight class iff brute-force isomorphic
    rng = random.Random(7)
    pool = [s for s in trees if s.weight <= 5]
    for _ in range(300):
        s, u = rng.choice(pool), rng.choice(pool)
        assert (s.key == u.key) == trees_isomorphic(s, u)


def test_ladder():
    assert ladder("abc").key == "a(b(c))"
    assert ladder("abc").ladder_word() == Word("abc")
    assert not t("a", t("b"), t("c")).is_ladder()


def test_canonicalize_graph_examples():
    g1 = canonicalize_graph(("a", "b"), [(0, 1)])
    g2 = canonicalize_graph(("b", "a"), [(1, 0)])
    assert g1 == g2
    paths = [
        canonicalize_graph(("a", "b", "c"), [(0, 1), (1, 2)]),
        canonicalize_graph(("b", "c", "a"), [(2, 0), (0, 1)]),
        canonicalize_graph(("c", "a", "b"), [(1, 2), (2, 0)]),
    ]
    assert len(set(paths)) == 1
    # repeated labels distinguished by structure only
    h1 = canonicalize_graph(("a", "b", "a", "b"), [(0, 1), (1, 2), (2, 3)])
    h2 = canonicalize_graph(("b", "a", "b", "a"), [(3, 2), (2, 1), (1, 0)])
    assert h1 == h2


def test_canonicalize_graph_lexmin_against_exhaustive_minimization():
    rng = random.Random(13)
    for _ in range(60):
        g = random_graph(rng, alphabet=("a", "b"), max_weight=5)
        n = len(g.labels)
        best = None
        for perm in itertools.permutations(range(n)):
            labs = tuple(g.labels[perm.index(i)] for i in range(n))
            if labs != tuple(sorted(g.labels)):
                continue
            cand = tuple(sorted((perm[s], perm[t]) for s, t in g.edges))
            if best is None or cand < best:
                best = cand
        assert g.sorted_edges() == best


def test_canonicalize_graph_idempotent_and_invariant():
    rng = random.Random(99)
    for _ in range(100):
        g = random_graph(rng, max_weight=6)
        assert canonicalize_graph(g.labels, g.edges) is canonicalize_graph(g.labels, g.edges)
        n = len(g.labels)
        perm = list(range(n))
        rng.shuffle(perm)
        relabeled = canonicalize_graph(
            tuple(g.labels[perm.index(i)] for i in range(n)),
            [(perm[s], perm[t]) for s, t in g.edges],
        )
        assert relabeled == g


def test_canonicalize_graph_rejections():
    with pytest.raises(ValueError):
        canonicalize_graph(("a", "b"), [])  # disconnected
    with pytest.raises(ValueError):
        canonicalize_graph(("a", "b", "c"), [(0, 1), (1, 2), (2, 0)])  # undirected cycle
    with pytest.raises(ValueError):
        canonicalize_graph(("a",), [(0, 0)])  # self loop
    with pytest.raises(ValueError):
        canonicalize_graph(("a", "b"), [(0, 1), (1, 0)])  # anti-parallel pair


words = st.builds(
    Word, st.lists(st.sampled_from(("a", "b", "c")), min_size=1, max_size=4).map(tuple)
)
scalars = st.one_of(
    st.integers(-6, 6), st.fractions(min_value=-3, max_value=3, max_denominator=4)
)
combos = st.lists(st.tuples(words, scalars), max_size=5).map(Combo)


@settings(max_examples=150, deadline=None)
@given(combos, combos, combos)
def test_combo_ring_laws(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x - x == Combo.zero()
    assert 2 * (x + y) == 2 * x + 2 * y
    assert Fraction(1, 2) * (2 * x) == x


@settings(max_examples=100, deadline=None)
@given(combos, scalars, scalars)
def test_combo_scaling(x, a, b):
    assert a * (b * x) == (a * b) * x
    assert (a + b) * x == a * x + b * x


def test_combo_basics():
    ab, ba = Word("ab"), Word("ba")
    c = Combo([(ab, 2), (ab, -2)])
    assert not c and len(c) == 0
    d = Combo.single(ab) - Combo.single(ba)
    assert d.coefficient(ba) == -1
    assert d.coefficient(Word("aa")) == 0
    assert d.multidegree() == (("a", 1), ("b", 1))
    with pytest.raises(ValueError):
        (Combo.single(Word("a")) + Combo.single(ab)).multidegree()
    with pytest.raises(TypeError):
        Combo.single(ab, 0.5)
