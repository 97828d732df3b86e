import random

from helpers import random_graph, random_tree, random_word
from liepairing.cli import parse_combo, parse_graph, parse_tree, parse_word
from liepairing.cobracket import cobracket, cobracket_assoc, cobracket_graph, cobracket_prelie
from liepairing.envelope import i_graph, i_prelie
from liepairing.terms import Combo, Word, tensor, tensor_swap


def test_word_cut_examples():
    w = parse_word
    assert cobracket_assoc(w("ab")) == tensor(w("a"), w("b")) - tensor(w("b"), w("a"))
    expected = (
        tensor(w("a"), w("bc"))
        + tensor(w("ab"), w("c"))
        - tensor(w("bc"), w("a"))
        - tensor(w("c"), w("ab"))
    )
    assert cobracket_assoc(w("abc")) == expected
    assert cobracket_assoc(w("a")) == Combo.zero()


def test_tree_cut_examples():
    t = parse_tree
    assert cobracket_prelie(t("a(b)")) == tensor(t("a"), t("b")) - tensor(t("b"), t("a"))
    expected = (
        tensor(t("a(b)"), t("c"))
        - tensor(t("c"), t("a(b)"))
        + tensor(t("a(c)"), t("b"))
        - tensor(t("b"), t("a(c)"))
    )
    assert cobracket_prelie(t("a(b,c)")) == expected
    assert cobracket_prelie(t("a")) == Combo.zero()


def test_tree_cut_multiplicity_is_the_product_dual():
    t = parse_tree
    # two identical branches: one cut pair, coefficient 1 (not 2)
    assert cobracket_prelie(t("a(b,b)")) == tensor(t("a(b)"), t("b")) - tensor(
        t("b"), t("a(b)")
    )
    got = cobracket_prelie(t("a(b(c),b(c))"))
    assert got.coefficient((t("a(b(c))"), t("b(c)"))) == 1
    assert got.coefficient((t("a(b,b(c))"), t("c"))) == 1
    # attaching at either of two equal vertices gives the same tree
    got = cobracket_prelie(t("a(b,b(c))"))
    assert got.coefficient((t("a(b,b)"), t("c"))) == 2


def test_graph_cut_examples():
    g = parse_graph
    ab = g("v1=a,v2=b; v1->v2")
    assert cobracket_graph(ab) == tensor(g("v1=a"), g("v1=b")) - tensor(g("v1=b"), g("v1=a"))
    path = g("v1=a,v2=b,v3=c; v1->v2,v2->v3")
    expected = (
        tensor(g("v1=a,v2=b; v1->v2"), g("v1=c"))
        - tensor(g("v1=c"), g("v1=a,v2=b; v1->v2"))
        + tensor(g("v1=a"), g("v1=b,v2=c; v1->v2"))
        - tensor(g("v1=b,v2=c; v1->v2"), g("v1=a"))
    )
    assert cobracket_graph(path) == expected


def test_co_anti_symmetry():
    rng = random.Random(31)
    for _ in range(25):
        for side, gen in (
            ("assoc", random_word),
            ("prelie", random_tree),
            ("graph", random_graph),
        ):
            c = Combo.single(gen(rng, max_weight=5) if side != "assoc" else gen(rng, max_len=5))
            assert tensor_swap(cobracket(side, c)) == -cobracket(side, c)


def _transport_tensor(t, f):
    out = Combo.zero()
    for (a, b), c in t.coeffs.items():
        out = out + tensor(f(a), f(b), c)
    return out


def test_inclusions_are_coalgebra_maps():
    rng = random.Random(41)
    for _ in range(25):
        w = random_word(rng, max_len=5)
        lhs = _transport_tensor(cobracket_assoc(w), i_prelie)
        assert lhs == cobracket_prelie(i_prelie(w))
    for _ in range(25):
        t = random_tree(rng, max_weight=5)
        lhs = _transport_tensor(cobracket_prelie(t), i_graph)
        assert lhs == cobracket_graph(i_graph(t))


def test_cobracket_is_linear():
    w = parse_word
    c = Combo.single(w("ab"), 2) - Combo.single(w("ba"), 1)
    assert cobracket_assoc(c) == 2 * cobracket_assoc(w("ab")) - cobracket_assoc(w("ba"))
