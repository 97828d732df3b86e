"""End-to-end acceptance checks, runnable via the CLI ``selftest`` command.

Each check returns (ok, detail).  All arithmetic is exact, so every
comparison below is exact equality.
"""

from __future__ import annotations

import io
import itertools
import math
import random
from contextlib import redirect_stdout

from . import envelope, freealg, liedual, operads, pairing
from . import cobracket as cobracket_mod
from .cli import format_combo, main as cli_main, parse_combo, parse_graph, parse_lie, parse_tree, parse_word
from .enumeration import multidegrees, shapes_of, unique_permutations
from .terms import Combo, Word, canonicalize_graph, ladder, left_normed
from .liedual import kernel_member, lie_dual_rank, long_graph, long_graph_reduce, spanning_brackets

ALPHABET = ("a", "b", "c")
SIDES = ("assoc", "prelie", "graph")


def _clear_all():
    freealg.clear_caches()
    envelope.clear_caches()
    cobracket_mod.clear_caches()
    pairing.clear_caches()


def _single(side, text):
    if side == "assoc":
        return parse_word(text)
    if side == "prelie":
        return parse_tree(text)
    return parse_graph(text)


def check_paper_values():
    """Worked pairing values, by every applicable algorithm."""
    cases = [
        ("abbba", "[[[a,b],b],[a,b]]", -2),
        ("abcdef", "[a,[f,[b,[e,[c,d]]]]]", 1),
        ("abcdef", "[f,[a,[e,[b,[d,c]]]]]", -1),
        ("abcdef", "[f,[e,[a,[c,[b,d]]]]]", 0),
        ("abbab", "[a,[b,[b,[b,a]]]]", -3),
    ]
    checks = 0
    for word_text, lie_text, expected in cases:
        w = parse_word(word_text)
        l = parse_lie(lie_text)
        got = [
            pairing.pair_expand("assoc", w, l),
            pairing.pair_recursive("assoc", w, l),
            pairing.pair_sigma("assoc", w, l),
        ]
        if pairing.is_right_normed(l):
            got.append(pairing.pair_right_normed(w, l))
        checks += len(got)
        if any(v != expected for v in got):
            return False, f"<{word_text}, {lie_text}> gave {got}, expected {expected}"
    return True, f"{len(cases)} values reproduced ({checks} algorithm runs)"


def check_paper_expansions():
    """Expansion and product examples, term for term."""
    cases = []
    cases.append((envelope.expand_prelie(parse_lie("[a,b]")), parse_combo("prelie", "a(b) - b(a)")))
    cases.append(
        (
            envelope.expand_prelie(parse_lie("[[a,b],c]")),
            parse_combo("prelie", "a(b,c) + a(b(c)) - b(a,c) - b(a(c)) - c(a(b)) + c(b(a))"),
        )
    )
    cases.append(
        (
            envelope.expand_graph(parse_lie("[a,b]")),
            parse_combo("graph", "(v1=a,v2=b; v1->v2) - (v1=a,v2=b; v2->v1)"),
        )
    )
    eight = (
        "(v1=a,v2=b,v3=c; v1->v2,v1->v3) + (v1=a,v2=b,v3=c; v1->v2,v2->v3)"
        " - (v1=a,v2=b,v3=c; v1->v2,v3->v1) - (v1=a,v2=b,v3=c; v1->v2,v3->v2)"
        " - (v1=a,v2=b,v3=c; v2->v1,v1->v3) - (v1=a,v2=b,v3=c; v2->v1,v2->v3)"
        " + (v1=a,v2=b,v3=c; v2->v1,v3->v1) + (v1=a,v2=b,v3=c; v2->v1,v3->v2)"
    )
    cases.append((envelope.expand_graph(parse_lie("[[a,b],c]")), parse_combo("graph", eight)))
    cases.append(
        (
            freealg.prelie_product(parse_tree("a(b,c)"), parse_tree("d(e)")),
            parse_combo("prelie", "a(b,c,d(e)) + a(b(d(e)),c) + a(b,c(d(e)))"),
        )
    )
    six = (
        "(v1=a,v2=b,v3=c,v4=d,v5=e; v1->v2,v2->v3,v4->v5,v1->v4)"
        " + (v1=a,v2=b,v3=c,v4=d,v5=e; v1->v2,v2->v3,v4->v5,v1->v5)"
        " + (v1=a,v2=b,v3=c,v4=d,v5=e; v1->v2,v2->v3,v4->v5,v2->v4)"
        " + (v1=a,v2=b,v3=c,v4=d,v5=e; v1->v2,v2->v3,v4->v5,v2->v5)"
        " + (v1=a,v2=b,v3=c,v4=d,v5=e; v1->v2,v2->v3,v4->v5,v3->v4)"
        " + (v1=a,v2=b,v3=c,v4=d,v5=e; v1->v2,v2->v3,v4->v5,v3->v5)"
    )
    cases.append(
        (
            freealg.graph_product(
                parse_graph("v1=a,v2=b,v3=c; v1->v2,v2->v3"), parse_graph("v1=d,v2=e; v1->v2")
            ),
            parse_combo("graph", six),
        )
    )
    for got, expected in cases:
        if got != expected:
            return False, f"expected {format_combo(expected)}, got {format_combo(got)}"
    return True, f"{len(cases)} displays reproduced term-for-term"


def check_algorithm_agreement():
    """Exhaustive agreement of the three pairing algorithms, weight <= 6."""
    rng = random.Random(20260810)
    comparisons = 0
    spot = 0
    for md in multidegrees(ALPHABET, 6):
        _clear_all()
        brackets = spanning_brackets(md)
        for side in SIDES:
            shapes = shapes_of(side, md)
            shape_set = set(shapes)
            for l in brackets:
                exp = envelope.expand(side, l)
                sig = pairing.sigma_pair_table(side, l)
                if exp != sig:
                    return False, f"sigma/expand mismatch at {md} {side} {l!r}"
                if not set(exp.coeffs) <= shape_set:
                    return False, f"expansion support escapes the shape list at {md} {side}"
                for s in shapes:
                    if pairing._rec_basis(side, s, l) != exp.coefficient(s):
                        return False, f"recursive mismatch at {md} {side} {s!r} {l!r}"
                comparisons += len(shapes)
            for _ in range(10):
                s = rng.choice(shapes)
                l = rng.choice(brackets)
                e = pairing.pair_expand(side, s, l)
                if pairing.pair_sigma(side, s, l) != e or pairing.pair_recursive(side, s, l) != e:
                    return False, f"per-pair mismatch at {md} {side} {s!r} {l!r}"
                spot += 1
    ok = comparisons >= 10_000
    return ok, f"{comparisons} exhaustive comparisons, {spot} per-pair spot checks, 0 mismatches"


def _random_content(rng, max_weight, min_weight=1, min_letters=1):
    while True:
        w = rng.randint(min_weight, max_weight)
        letters = [rng.choice(ALPHABET) for _ in range(w)]
        md = tuple(sorted((g, letters.count(g)) for g in set(letters)))
        if len(md) >= min_letters:
            return md


def _random_shape(side, rng, max_weight, min_weight=1, min_letters=1):
    md = _random_content(rng, max_weight, min_weight, min_letters)
    return rng.choice(shapes_of(side, md))


def _random_bracket(rng, max_weight):
    letters = [rng.choice(ALPHABET) for _ in range(rng.randint(1, max_weight))]

    def build(seq):
        if len(seq) == 1:
            return parse_lie(seq[0])
        k = rng.randint(1, len(seq) - 1)
        from .terms import LieExpr

        return LieExpr(left=build(seq[:k]), right=build(seq[k:]))

    return build(letters)


def check_cobracket_compatibility():
    """pair(phi,[x,y]) equals the cobracket-split sum, randomized."""
    rng = random.Random(977)
    per_side = 500
    for side in SIDES:
        for trial in range(per_side):
            phi = Combo.single(_random_shape(side, rng, 4, min_weight=2), rng.choice([1, 2, -1]))
            if trial % 3 == 0:
                phi = phi + Combo.single(_random_shape(side, rng, 4, min_weight=2))
            x = _random_bracket(rng, 3)
            y = _random_bracket(rng, 3)
            from .terms import LieExpr

            lhs = pairing.pair_expand(side, phi, LieExpr(left=x, right=y))
            rhs = 0
            for (alpha, beta), c in cobracket_mod.cobracket(side, phi).coeffs.items():
                rhs += c * pairing.pair_expand(side, alpha, x) * pairing.pair_expand(side, beta, y)
            if lhs != rhs:
                return False, f"{side} trial {trial}: {lhs} != {rhs}"
    return True, f"{per_side} randomized triples per side"


def check_factorization():
    """Word pairings factor through ladder trees and oriented paths."""
    count = 0
    for n in range(1, 7):
        for letters in itertools.product(("a", "b"), repeat=n):
            w = Word(letters)
            lad = envelope.i_prelie(w)
            gr = envelope.i_graph(lad)
            for l in spanning_brackets(w.content()):
                e = pairing.pair_expand("assoc", w, l)
                if (
                    pairing.pair_expand("prelie", lad, l) != e
                    or pairing.pair_expand("graph", gr, l) != e
                ):
                    return False, f"factorization fails at {w!r}, {l!r}"
                count += 1
    return True, f"{count} word/bracket pairs agree across the three sides"


def _paper_weight4_kernel_elements():
    t = parse_tree
    c = lambda text: parse_combo("prelie", text)
    return [
        c("a(b(c(d))) + b(a,c(d))"),
        c("a(b(c(d))) + b(c(a,d)) + c(a(b),d)"),
        c("a(b(c(d))) - c(b(a),d)"),
        c("a(b(c(d))) + a(c(b,d)) - a(b,c(d))"),
        c("a(b,c(d)) + b(a,c(d)) + c(a,b,d)"),
        c("a(b(c(d))) + d(c(b(a)))"),
    ]


def check_kernel_suite():
    """Kernel generators, grafted elements, shuffles and reversals."""
    members = []
    for labels in (("a", "b"), ("a", "b", "c")):
        for side in SIDES:
            for gen in liedual.kernel_generators(side, labels):
                members.append((side, gen))
    for combo_ in _paper_weight4_kernel_elements():
        members.append(("prelie", combo_))
    # grafting the weight-3 generators reproduces the first two displays
    arnold, lifted = liedual.kernel_generators("prelie", ("a", "b", "c"))
    d = parse_tree("d")
    if liedual.graft_below_label(lifted, "c", d) != _paper_weight4_kernel_elements()[0]:
        return False, "grafted display differs from the pinned weight-4 element"
    if liedual.graft_below_label(arnold, "c", d) != _paper_weight4_kernel_elements()[1]:
        return False, "grafted cyclic display differs from the pinned weight-4 element"
    shuffle_count = 0
    for nu in range(1, 6):
        for nv in range(1, 7 - nu):
            for u in itertools.product(("a", "b"), repeat=nu):
                for v in itertools.product(("a", "b"), repeat=nv):
                    members.append(("assoc", freealg.shuffle(Word(u), Word(v))))
                    shuffle_count += 1
    reversal = Combo.single(parse_word("a1 a2 a3 a4 a5")) - Combo.single(
        parse_word("a5 a4 a3 a2 a1")
    )
    members.append(("assoc", reversal))
    for side, elt in members:
        if not kernel_member(side, elt):
            return False, f"expected kernel membership on side {side}: {format_combo(elt)}"
    rng = random.Random(5150)
    controls = 0
    for _ in range(60):
        side = rng.choice(SIDES)
        s = _random_shape(side, rng, 5, min_weight=2, min_letters=2)
        if kernel_member(side, Combo.single(s)):
            return False, f"control dual unexpectedly in the kernel: {s!r}"
        controls += 1
    return True, f"{len(members)} members (incl. {shuffle_count} shuffles), {controls} non-member controls"


def check_long_graphs():
    """Long graphs pair as the identity matrix; reduction residuals vanish."""
    letters = ("a", "b", "c", "d", "e", "f")
    entries = 0
    for n in range(2, 7):
        rest = letters[1:n]
        perms = list(itertools.permutations(rest))
        for sig in perms:
            lg = long_graph("a", sig)
            for tau in perms:
                expected = 1 if sig == tau else 0
                if pairing.pair_sigma("graph", lg, left_normed(("a",) + tau)) != expected:
                    return False, f"long-graph matrix is not the identity at n={n}"
                entries += 1
    rng = random.Random(4242)
    reductions = 0
    for _ in range(200):
        n = rng.randint(2, 5)
        md = tuple((g, 1) for g in letters[:n])
        pool = shapes_of("graph", md)
        gamma = Combo.single(rng.choice(pool), rng.choice([1, 2, -1]))
        if rng.random() < 0.5:
            gamma = gamma + Combo.single(rng.choice(pool))
        if not gamma:
            continue
        residual = gamma - long_graph_reduce(gamma, "a")
        if residual and not kernel_member("graph", residual):
            return False, "reduction residual escapes the kernel"
        reductions += 1
    return True, f"{entries} identity-matrix entries, {reductions} reduction residuals in the kernel"


def _mobius(d):
    out = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            out = -out
        p += 1
    if d > 1:
        out = -out
    return out


def lyndon_content_count(md):
    """Number of Lyndon words with the given letter content."""
    counts = [k for _, k in md]
    n = sum(counts)
    g = 0
    for k in counts:
        g = math.gcd(g, k)
    total = 0
    for d in range(1, g + 1):
        if g % d:
            continue
        mu = _mobius(d)
        if mu == 0:
            continue
        term = math.factorial(n // d)
        for k in counts:
            term //= math.factorial(k // d)
        total += mu * term
    return total // n


def check_rank_audit():
    """Pairing ranks agree across sides and match the Lyndon count."""
    audited = 0
    for md in multidegrees(ALPHABET, 6):
        _clear_all()
        expected = lyndon_content_count(md)
        for side in SIDES:
            got = lie_dual_rank(side, md)
            if got != expected:
                return False, f"rank {got} != Lyndon count {expected} at {md} on side {side}"
        audited += 1
    return True, f"{audited} multidegrees audited on all three sides"


def check_operads():
    """Dimension formulas, composition axioms and the quotient factorizations."""
    for n in range(1, 6):
        if operads.dims("assoc", n) != math.factorial(n):
            return False, f"assoc dims wrong at {n}"
        if operads.dims("prelie", n) != n ** (n - 1):
            return False, f"prelie dims wrong at {n}"
        if operads.dims("graph", n) != n ** max(n - 2, 0) * 2 ** (n - 1):
            return False, f"graph dims wrong at {n}"
    for family in operads.FAMILIES:
        ok, _ = operads.check_axioms(family, trials=10, seed=7)
        if not ok:
            return False, f"composition axioms fail for {family}"
    checked = 0
    for n in range(2, 5):
        for perm in itertools.permutations(range(1, n + 1)):
            l = left_normed(tuple(str(j) for j in perm))
            target = operads.envelope_to_assoc(l).combo
            if operads.quotient_to_assoc(operads.envelope_to_prelie(l)).combo != target:
                return False, f"prelie quotient fails at {l!r}"
            if (
                operads.quotient_to_assoc(
                    operads.quotient_to_prelie(operads.envelope_to_graph(l))
                ).combo
                != target
            ):
                return False, f"graph quotient fails at {l!r}"
            checked += 1
    bdim = operads.binary_generated_dim("graph", 3)
    total = operads.dims("graph", 3)
    if not bdim < total:
        return False, f"binary span {bdim} does not witness higher products (dims {total})"
    return True, f"dims 1..5 exact, {checked} quotient factorizations, binary span {bdim} < {total}"


def _run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def _random_value(rng, family):
    if family == "word":
        return _random_shape("assoc", rng, 5)
    if family == "tree":
        return _random_shape("prelie", rng, 5)
    if family == "graph":
        return _random_shape("graph", rng, 5)
    return _random_bracket(rng, 4)


def check_cli():
    """Golden outputs and parse/print round trips."""
    goldens = [
        (["pair", "--algo", "expand", "--side", "assoc", "abbba", "[[[a,b],b],[a,b]]"], "-2\n"),
        (
            ["expand", "--side", "prelie", "[[a,b],c]"],
            "a(b(c)) + a(b,c) - b(a(c)) - b(a,c) - c(a(b)) + c(b(a))\n",
        ),
        (
            [
                "kernel-check",
                "--side",
                "graph",
                "1*(v1=a,v2=b; v1->v2) + 1*(v1=a,v2=b; v2->v1)",
            ],
            "true\n",
        ),
    ]
    for argv, expected in goldens:
        code, out = _run_cli(argv)
        if code != 0 or out != expected:
            return False, f"golden mismatch for {argv}: {out!r}"
    rng = random.Random(31337)
    parsers = {"word": parse_word, "tree": parse_tree, "graph": parse_graph, "lie": parse_lie}
    sides = {"word": "assoc", "tree": "prelie", "graph": "graph", "lie": "lie"}
    trips = 0
    for _ in range(1000):
        family = rng.choice(("word", "tree", "graph", "lie"))
        value = _random_value(rng, family)
        if rng.random() < 0.5:
            if parsers[family](repr(value)) != value:
                return False, f"round trip fails for {value!r}"
        else:
            c = Combo.single(value, rng.choice([1, 2, -1])) + Combo.single(
                _random_value(rng, family), rng.choice([1, 0, -3])
            )
            if parse_combo(sides[family], format_combo(c)) != c:
                return False, f"combo round trip fails for {format_combo(c)}"
        trips += 1
    return True, f"3 golden outputs byte-exact, {trips} round trips"


CRITERIA = [
    ("paper-values", check_paper_values),
    ("paper-expansions", check_paper_expansions),
    ("algorithm-agreement", check_algorithm_agreement),
    ("cobracket-compatibility", check_cobracket_compatibility),
    ("factorization", check_factorization),
    ("kernel-suite", check_kernel_suite),
    ("long-graphs", check_long_graphs),
    ("rank-audit", check_rank_audit),
    ("operads", check_operads),
    ("cli", check_cli),
]


def run_all(verbose=False, only=None):
    results = []
    for i, (name, func) in enumerate(CRITERIA, start=1):
        if only is not None and i not in only:
            continue
        ok, detail = func()
        results.append((name, ok, detail))
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'}  {i:2d} {name}: {detail}")
    return results
