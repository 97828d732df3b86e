"""Batch command line interface and the shared text grammars.

Grammar summary:
  word   letters separated by whitespace/commas, or juxtaposed when all
         generators are single characters ("abbba")
  tree   label or label(child,...,child)
  graph  v1=a,v2=b,...; v1->v2,...
  lie    gen or [lie,lie]
  combo  coeff*term +/- ... with coeff an integer or p/q; graph terms
         are parenthesized inside combos; a bare term means coeff 1

Exit codes: 0 success, 1 domain error, 2 parse/usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import cobracket as cobracket_mod
from . import envelope, freealg, liedual, operads, pairing
from .terms import (
    Combo,
    LieExpr,
    OrientedGraph,
    RootedTree,
    Word,
    canonicalize_graph,
    leaf,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0-9]+")


class ParseError(ValueError):
    """Syntax error with a position in the input text."""

    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


class _Cursor:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.text, self.pos)
        self.pos += 1

    def ident(self):
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise ParseError("expected a generator name", self.text, self.pos)
        self.pos = m.end()
        return m.group()

    def done(self):
        self.skip_ws()
        if self.pos != len(self.text):
            raise ParseError("unexpected trailing input", self.text, self.pos)


def parse_word(text):
    """A word: separated tokens, or each character a generator."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty word", text, 0)
    if any(ch.isspace() or ch == "," for ch in stripped):
        letters = [tok for tok in re.split(r"[,\s]+", stripped) if tok]
    else:
        letters = list(stripped)
    for g in letters:
        if not _IDENT.fullmatch(g):
            raise ParseError(f"bad generator {g!r}", text, text.find(g))
    return Word(letters)


def _parse_tree(cur):
    label = cur.ident()
    children = []
    if cur.peek() == "(":
        cur.expect("(")
        children.append(_parse_tree(cur))
        while cur.peek() == ",":
            cur.expect(",")
            children.append(_parse_tree(cur))
        cur.expect(")")
    return RootedTree(label, children)


def parse_tree(text):
    cur = _Cursor(text)
    t = _parse_tree(cur)
    cur.done()
    return t


def parse_graph(text):
    """A graph: vertex definitions, then optional directed edges."""
    parts = text.split(";")
    if len(parts) > 2:
        raise ParseError("expected at most one ';'", text, text.find(";", text.find(";") + 1))
    index = {}
    labels = []
    cur = _Cursor(parts[0])
    while True:
        name = cur.ident()
        cur.expect("=")
        label = cur.ident()
        if name in index:
            raise ParseError(f"vertex {name!r} defined twice", text, cur.pos)
        index[name] = len(labels)
        labels.append(label)
        if cur.peek() != ",":
            break
        cur.expect(",")
    cur.done()
    edges = []
    if len(parts) == 2 and parts[1].strip():
        cur = _Cursor(parts[1])
        while True:
            a = cur.ident()
            cur.expect("-")
            cur.expect(">")
            b = cur.ident()
            for name in (a, b):
                if name not in index:
                    raise ParseError(f"undefined vertex {name!r}", text, cur.pos)
            edges.append((index[a], index[b]))
            if cur.peek() != ",":
                break
            cur.expect(",")
        cur.done()
    return canonicalize_graph(labels, edges)


def _parse_lie(cur):
    if cur.peek() == "[":
        cur.expect("[")
        left = _parse_lie(cur)
        cur.expect(",")
        right = _parse_lie(cur)
        cur.expect("]")
        return LieExpr(left=left, right=right)
    return leaf(cur.ident())


def parse_lie(text):
    cur = _Cursor(text)
    e = _parse_lie(cur)
    cur.done()
    return e


def parse_scalar(text):
    text = text.strip()
    m = re.fullmatch(r"([+-]?\d+)(?:\s*/\s*(\d+))?", text)
    if not m:
        raise ParseError("expected an integer or p/q", text, 0)
    p = int(m.group(1))
    if m.group(2) is None:
        return p
    q = int(m.group(2))
    if q == 0:
        raise ParseError("zero denominator", text, 0)
    f = Fraction(p, q)
    return int(f) if f.denominator == 1 else f


_TERM_PARSERS = {
    "assoc": parse_word,
    "prelie": parse_tree,
    "graph": parse_graph,
    "lie": parse_lie,
}


def _split_terms(text):
    """Split a combo into (sign, piece) fragments at top-level +/-.

    Signs with no term before them prefix the upcoming term; '->' arrows
    never split (graph terms are parenthesized anyway).
    """
    pieces = []
    depth = 0
    start = 0
    sign = 1
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and ch in "+-" and text[i : i + 2] != "->":
            body = text[start:i]
            if body.strip():
                pieces.append((sign, body))
                sign = 1 if ch == "+" else -1
            else:
                sign = sign * (1 if ch == "+" else -1)
            start = i + 1
    body = text[start:]
    if not body.strip():
        raise ParseError("dangling sign", text, len(text))
    pieces.append((sign, body))
    return pieces


def parse_combo(side, text):
    """A linear combination of terms of the given side."""
    if not text.strip():
        raise ParseError("empty combination", text, 0)
    if text.strip() == "0":
        return Combo.zero()
    term_parser = _TERM_PARSERS[side]
    acc = Combo.zero()
    for sign, piece in _split_terms(text):
        piece = piece.strip()
        if not piece:
            raise ParseError("empty term", text, 0)
        coeff = sign
        # optional leading coefficient with '*'
        star = _find_top_level_star(piece)
        if star is not None:
            coeff = sign * parse_scalar(piece[:star])
            piece = piece[star + 1 :].strip()
        if piece.startswith("(") and piece.endswith(")") and _matching(piece):
            piece = piece[1:-1]
        acc = acc + Combo.single(term_parser(piece), coeff)
    return acc


def _find_top_level_star(piece):
    depth = 0
    for i, ch in enumerate(piece):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "*" and depth == 0:
            return i
    return None


def _matching(piece):
    depth = 0
    for i, ch in enumerate(piece):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and i < len(piece) - 1:
            return False
    return depth == 0


# -- formatting ---------------------------------------------------------------


def format_scalar(c):
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _term_text(term):
    if isinstance(term, tuple):
        return "⊗".join(_term_text(part) for part in term)
    if isinstance(term, OrientedGraph):
        return f"({term!r})"
    return repr(term)


def format_combo(c):
    """Canonical text of a combination: deterministic term order."""
    if not c.coeffs:
        return "0"
    out = []
    for t in c.terms():
        v = Fraction(c.coeffs[t])
        sign = "-" if v < 0 else "+"
        body = _term_text(t)
        if abs(v) != 1:
            body = f"{format_scalar(abs(v))}*{body}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def shape_json(term):
    if isinstance(term, Word):
        return {"kind": "word", "letters": list(term.letters)}
    if isinstance(term, RootedTree):

        def tree_obj(t):
            return {"label": t.label, "children": [tree_obj(k) for k in t.children]}

        return {"kind": "tree", **tree_obj(term)}
    if isinstance(term, OrientedGraph):
        return {
            "kind": "graph",
            "vertices": list(term.labels),
            "edges": [list(e) for e in term.sorted_edges()],
        }
    if isinstance(term, LieExpr):

        def lie_obj(e):
            if e.is_leaf:
                return {"leaf": e.label}
            return {"bracket": [lie_obj(e.left), lie_obj(e.right)]}

        return {"kind": "lie", **lie_obj(term)}
    raise TypeError(f"unknown term type: {type(term).__name__}")


def combo_json(c):
    terms = []
    for t in c.terms():
        coeff = format_scalar(c.coeffs[t])
        if isinstance(t, tuple):
            terms.append({"coeff": coeff, "left": shape_json(t[0]), "right": shape_json(t[1])})
        else:
            terms.append({"coeff": coeff, "shape": shape_json(t)})
    return {"terms": terms}


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- commands -----------------------------------------------------------------


def _print_combo(c, as_json):
    print(_dump(combo_json(c)) if as_json else format_combo(c))


def _print_value(v, as_json):
    if isinstance(v, bool):
        print(_dump({"value": v}) if as_json else ("true" if v else "false"))
    elif isinstance(v, (int, Fraction)):
        print(_dump({"value": format_scalar(v)}) if as_json else format_scalar(v))
    else:
        print(_dump({"value": v}) if as_json else v)


def _cmd_expand(args):
    c = envelope.expand(args.side, parse_combo("lie", args.lie))
    _print_combo(c, args.json)
    return 0


def _cmd_pair(args):
    dual_side = "assoc" if args.algo == "rightnormed" else args.side
    dual = parse_combo(dual_side, args.dual)
    lie_combo = parse_combo("lie", args.lie)
    value = pairing.pair(args.algo, args.side, dual, lie_combo)
    _print_value(value, args.json)
    return 0


def _cmd_product(args):
    side = "assoc" if args.kind in ("concat", "shuffle") else args.kind
    a = parse_combo(side, args.a)
    b = parse_combo(side, args.b)
    _print_combo(freealg.product(args.kind, a, b), args.json)
    return 0


def _cmd_cobracket(args):
    dual = parse_combo(args.side, args.dual)
    _print_combo(cobracket_mod.cobracket(args.side, dual), args.json)
    return 0


def _cmd_lyndon(args):
    alphabet = [g for g in args.alphabet.split(",") if g]
    words = freealg.lyndon_words(alphabet, args.max_len)
    if args.json:
        print(_dump({"words": [repr(w) for w in words]}))
    else:
        for w in words:
            print(repr(w))
    return 0


def _cmd_kernel_check(args):
    dual = parse_combo(args.side, args.dual)
    _print_value(liedual.kernel_member(args.side, dual), args.json)
    return 0


def _cmd_reduce_long(args):
    dual = parse_combo("graph", args.dual)
    _print_combo(liedual.long_graph_reduce(dual, args.base), args.json)
    return 0


def _operad_element(family, text):
    side = {"assoc": "assoc", "prelie": "prelie", "graph": "graph", "lie": "lie"}[family]
    c = parse_combo(side, text)
    if not c.coeffs:
        raise ValueError("operad elements must be nonzero")
    arity = next(iter(c.coeffs)).weight
    return operads.OperadElement(family, arity, c)


def _cmd_operad(args):
    if args.op == "compose":
        x = _operad_element(args.family, args.x)
        y = _operad_element(args.family, args.y)
        z = operads.compose(x, args.slot, y)
        _print_combo(z.combo, args.json)
        return 0
    if args.op == "dims":
        _print_value(operads.dims(args.family, args.arity), args.json)
        return 0
    if args.op == "check-axioms":
        ok, comparisons = operads.check_axioms(args.family, args.trials, args.seed)
        if args.json:
            print(_dump({"ok": ok, "comparisons": comparisons}))
        else:
            print(f"{'ok' if ok else 'FAILED'} ({comparisons} comparisons)")
        return 0 if ok else 1
    raise ValueError(f"unknown operad operation {args.op!r}")


def _cmd_selftest(args):
    from .selftest import run_all

    results = run_all(verbose=True)
    return 0 if all(ok for _, ok, _ in results) else 1


def _build_parser():
    top = argparse.ArgumentParser(
        prog="liepairing",
        description="Exact free Lie / preLie / graph algebra computations.",
    )
    top.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="enveloping polynomial of a Lie expression")
    p.add_argument("--side", choices=freealg.SIDES, required=True)
    p.add_argument("lie")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("pair", help="configuration pairing of a dual with a Lie expression")
    p.add_argument("--algo", choices=pairing.ALGORITHMS, required=True)
    p.add_argument("--side", choices=freealg.SIDES, required=True)
    p.add_argument("dual")
    p.add_argument("lie")
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("product", help="free algebra products")
    p.add_argument("--kind", choices=("concat", "shuffle", "prelie", "graph"), required=True)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("cobracket", help="anti-commutative cobracket of a dual")
    p.add_argument("--side", choices=freealg.SIDES, required=True)
    p.add_argument("dual")
    p.set_defaults(func=_cmd_cobracket)

    p = sub.add_parser("lyndon", help="Lyndon words over an alphabet")
    p.add_argument("--alphabet", required=True, help="comma-separated generators")
    p.add_argument("--max-len", type=int, required=True)
    p.set_defaults(func=_cmd_lyndon)

    p = sub.add_parser("kernel-check", help="membership in the kernel of the dual surjection")
    p.add_argument("--side", choices=freealg.SIDES, required=True)
    p.add_argument("dual")
    p.set_defaults(func=_cmd_kernel_check)

    p = sub.add_parser("reduce-long", help="long-graph normal form of a graph dual")
    p.add_argument("--base", required=True, help="generator starting the long paths")
    p.add_argument("dual")
    p.set_defaults(func=_cmd_reduce_long)

    p = sub.add_parser("operad", help="arity-graded composition operations")
    op_sub = p.add_subparsers(dest="op", required=True)
    q = op_sub.add_parser("compose")
    q.add_argument("--family", choices=operads.FAMILIES, required=True)
    q.add_argument("x")
    q.add_argument("slot", type=int)
    q.add_argument("y")
    q.set_defaults(func=_cmd_operad)
    q = op_sub.add_parser("dims")
    q.add_argument("--family", choices=operads.FAMILIES, required=True)
    q.add_argument("--arity", type=int, required=True)
    q.set_defaults(func=_cmd_operad)
    q = op_sub.add_parser("check-axioms")
    q.add_argument("--family", choices=operads.FAMILIES, required=True)
    q.add_argument("--trials", type=int, default=20)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_operad)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(func=_cmd_selftest)

    return top


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
