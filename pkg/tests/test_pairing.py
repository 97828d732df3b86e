import random

import pytest

from helpers import random_graph, random_lie, random_tree, random_word
from liepairing.cli import parse_graph, parse_lie, parse_tree, parse_word
from liepairing.envelope import expand, i_graph, i_prelie
from liepairing.pairing import (
    label_preserving_bijections,
    lie_tables,
    pair,
    pair_expand,
    pair_recursive,
    pair_right_normed,
    pair_sigma,
    root_of,
    shape_form,
    sigma_pair_table,
    sigma_split_terms,
    sigma_value,
    sign_of,
    structure_automorphisms,
)
from liepairing.terms import Combo, Word


def test_root_of_and_sign_of():
    l = parse_lie("[[a,b],c]")
    # leaves a=0, b=1, c=2; internal: root id 0, the [a,b] vertex id 1
    assert root_of(l, 0, 1) == 1
    assert root_of(l, 0, 2) == 0
    assert root_of(l, 1, 2) == 0
    ab = parse_lie("[a,b]")
    assert sign_of(ab, 0, 1) == 1
    assert sign_of(ab, 1, 0) == -1
    acb = parse_lie("[a,[c,b]]")
    # c precedes b in planar order
    leaves = acb.leaves()
    assert leaves == ("a", "c", "b")
    assert sign_of(acb, 2, 1) == -1
    with pytest.raises(ValueError):
        root_of(l, 1, 1)
    with pytest.raises(ValueError):
        sign_of(l, 0, 7)


def test_pair_expand_examples():
    assert pair_expand("assoc", parse_word("abbba"), parse_lie("[[[a,b],b],[a,b]]")) == -2
    assert pair_expand("prelie", parse_tree("a(b,c)"), parse_lie("[[a,b],c]")) == 1
    assert pair_expand("graph", parse_graph("v1=a,v2=b; v1->v2"), parse_lie("[a,b]")) == 1
    # multidegree mismatch pairs to zero
    assert pair_expand("assoc", parse_word("ab"), parse_lie("[[a,b],c]")) == 0


def test_pair_recursive_examples():
    assert pair_recursive("assoc", parse_word("abbba"), parse_lie("[[[a,b],b],[a,b]]")) == -2
    assert pair_recursive("assoc", parse_word("a"), parse_lie("a")) == 1
    assert pair_recursive("assoc", parse_word("a"), parse_lie("b")) == 0
    assert pair_recursive("assoc", parse_word("ab"), parse_lie("[[a,b],c]")) == 0


def test_sigma_worked_example():
    # star against [[x,y],z]: identity-style bijection pairs to 1, the
    # rotated one sends both edges to the root and pairs to 0
    star = parse_tree("r(s,t)")
    l = parse_lie("[[r,s],t]")
    assert sigma_value("prelie", star, l, {0: 0, 1: 1, 2: 2}) == 1
    assert sigma_value("prelie", star, l, {0: 2, 1: 0, 2: 1}) == 0


def test_sigma_examples():
    out_star = parse_graph("v1=a,v2=b,v3=c; v1->v2,v1->v3")
    assert pair_sigma("graph", out_star, parse_lie("[a,[b,c]]")) == 0
    assert pair_sigma("graph", out_star, parse_lie("[[a,b],c]")) == 1
    assert pair_sigma("graph", out_star, parse_lie("[[a,b],c]")) == pair_expand(
        "graph", out_star, parse_lie("[[a,b],c]")
    )


def test_sigma_automorphism_normalization():
    t = parse_tree("a(b,b)")
    assert structure_automorphisms("prelie", t) == 2
    l = parse_lie("[[b,a],b]")
    assert pair_sigma("prelie", t, l) == pair_expand("prelie", t, l) == -1
    g = parse_graph("v1=a,v2=b,v3=b; v1->v2,v1->v3")
    assert structure_automorphisms("graph", g) == 2
    assert pair_sigma("graph", g, l) == pair_expand("graph", g, l)


def test_right_normed_examples():
    cases = [
        ("abcdef", "[a,[f,[b,[e,[c,d]]]]]", 1),
        ("abcdef", "[f,[a,[e,[b,[d,c]]]]]", -1),
        ("abcdef", "[f,[e,[a,[c,[b,d]]]]]", 0),
        ("abbab", "[a,[b,[b,[b,a]]]]", -3),
    ]
    for w, l, expected in cases:
        assert pair_right_normed(parse_word(w), parse_lie(l)) == expected
    with pytest.raises(ValueError):
        pair_right_normed(parse_word("abc"), parse_lie("[[a,b],c]"))
    with pytest.raises(ValueError):
        pair("rightnormed", "prelie", parse_word("ab"), parse_lie("[a,b]"))


def test_algorithms_agree_randomized():
    rng = random.Random(61)
    gens = {"assoc": random_word, "prelie": random_tree, "graph": random_graph}
    for _ in range(60):
        side = rng.choice(("assoc", "prelie", "graph"))
        l = random_lie(rng, max_weight=4)
        kwargs = {"max_len": 4} if side == "assoc" else {"max_weight": 4}
        s = gens[side](rng, **kwargs)
        e = pair_expand(side, s, l)
        assert pair_recursive(side, s, l) == e
        assert pair_sigma(side, s, l) == e


def test_sigma_table_matches_per_pair_and_expansion():
    rng = random.Random(71)
    for _ in range(15):
        side = rng.choice(("assoc", "prelie", "graph"))
        l = random_lie(rng, max_weight=4)
        table = sigma_pair_table(side, l)
        assert table == expand(side, l)
        for s in list(table.coeffs)[:5]:
            assert pair_sigma(side, s, l) == table.coefficient(s)


def test_split_lemma_at_most_one_term():
    from helpers import random_graph_labeled, random_tree_labeled

    rng = random.Random(81)
    checked = 0
    for _ in range(150):
        side = rng.choice(("prelie", "graph"))
        l = random_lie(rng, max_weight=4)
        if l.is_leaf:
            continue
        make = random_tree_labeled if side == "prelie" else random_graph_labeled
        s = make(rng, list(l.leaves()))
        labels, _ = shape_form(side, s)
        for sigma in label_preserving_bijections(labels, l.leaves()):
            terms = sigma_split_terms(side, s, l, sigma)
            assert sum(1 for v in terms if v) <= 1
            assert sum(terms) == sigma_value(side, s, l, sigma)
            checked += 1
    assert checked > 100


def test_pairing_bilinear():
    w1, w2 = parse_word("ab"), parse_word("ba")
    dual = Combo.single(w1, 2) - Combo.single(w2, 5)
    l = parse_lie("[a,b]")
    assert pair_expand("assoc", dual, l) == 2 * 1 - 5 * (-1)
    lc = Combo.single(l, 3)
    assert pair_expand("assoc", dual, lc) == 3 * 7
