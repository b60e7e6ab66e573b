"""Expression syntax, printers, the command line, and the selftest runner.

Grammar: atoms are generator names and ``e``; ``@`` is the circ product,
``*`` the commutative product.  ``@`` binds tighter than ``*``; ``*`` chains
left-associated; nested ``@`` needs parentheses.  Relation files accept
integer or rational coefficients and ``+``/``-`` between such products, one
expression per line, ``#`` comments.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import admissible, differential, embedding, presentations, rewriter, terms
from .admissible import CPoly, CWord, leading, ord_key, poly_word, sorted_words
from .differential import DPoly, DWord, theta
from .errors import GdnpError, ParseError
from .presentations import Bounds
from .terms import (CIRC, DOT, LEAF, UNIT, Alphabet, Coeff, Tableau, Term,
                    tableau_term)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_RESERVED = {"e", "D"}


@dataclass
class Session:
    gens: Alphabet
    seed: int = 0
    trials: int = 200
    bounds: Bounds = Bounds(4, 2)
    method: str = "embed"
    fmt: str = "text"

    def __post_init__(self):
        for g in self.gens.generators:
            if not _NAME_RE.fullmatch(g.symbol) or g.symbol in _RESERVED:
                raise ValueError(f"bad generator name {g.symbol!r}")


# ---------------------------------------------------------------------------
# Tokenizer and recursive-descent parser.

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)"
                       r"|(?P<op>[@*()+/-]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    """(kind, text, 1-based position) triples plus a final ('end', '', n)."""
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            stripped = len(src) - len(src[pos:].lstrip())
            if stripped == len(src) - pos:
                break
            raise ParseError(f"bad character {src[stripped]!r} at {stripped + 1}",
                             stripped + 1, frozenset())
        pos = m.end()
        if m.lastgroup == "name":
            out.append(("name", m.group("name"), m.start("name") + 1))
        elif m.lastgroup == "int":
            out.append(("int", m.group("int"), m.start("int") + 1))
        else:
            out.append((m.group("op"), m.group("op"), m.start("op") + 1))
    out.append(("end", "", len(src) + 1))
    return out


class _Parser:
    def __init__(self, src: str, session: Session):
        self.tokens = _tokenize(src)
        self.i = 0
        self.session = session

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            self.fail({kind})
        self.i += 1
        return tok

    def fail(self, expected):
        kind, text, pos = self.tokens[self.i]
        shown = text or "end of input"
        raise ParseError(f"unexpected {shown!r} at position {pos}, expected "
                         f"one of {sorted(expected)}", pos, frozenset(expected))

    def atom(self) -> Term:
        kind, text, pos = self.peek()
        if kind == "name":
            self.i += 1
            if text == "e":
                return terms.E
            try:
                return terms.leaf(self.session.gens.rank(text))
            except KeyError:
                raise ParseError(f"unknown generator {text!r} at position {pos}",
                                 pos, frozenset({"name"})) from None
        if kind == "(":
            self.i += 1
            t = self.expr()
            self.take(")")
            return t
        self.fail({"name", "("})

    def circfactor(self) -> Term:
        t = self.atom()
        if self.peek()[0] == "@":
            self.i += 1
            t = terms.circ(t, self.atom())
        return t

    def expr(self) -> Term:
        t = self.circfactor()
        while self.peek()[0] == "*":
            self.i += 1
            t = terms.dot(t, self.circfactor())
        return t

    def term_input(self) -> Term:
        t = self.expr()
        if self.peek()[0] != "end":
            self.fail({"*", "end"})
        return t

    def coefficient(self) -> Coeff:
        num = int(self.take("int")[1])
        if self.peek()[0] == "/":
            self.i += 1
            den = int(self.take("int")[1])
            q = Fraction(num, den)
            return int(q) if q.denominator == 1 else q
        return num

    def linear_input(self) -> dict[Term, Coeff]:
        out: dict[Term, Coeff] = {}
        sign = 1
        kind = self.peek()[0]
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            self.i += 1
        while True:
            c = sign
            if self.peek()[0] == "int":
                c = sign * self.coefficient()
            t = self.expr()
            s = out.get(t, 0) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
            kind = self.peek()[0]
            if kind == "end":
                return out
            if kind not in ("+", "-"):
                self.fail({"+", "-", "end"})
            sign = -1 if kind == "-" else 1
            self.i += 1


def parse_term(src: str, session: Session) -> Term:
    return _Parser(src, session).term_input()


def parse_linear(src: str, session: Session) -> dict[Term, Coeff]:
    """Rational linear combination of term expressions."""
    return _Parser(src, session).linear_input()


# ---------------------------------------------------------------------------
# Printers.

def print_term(t: Term, session: Session) -> str:
    sym = session.gens.symbol
    if t.op == LEAF:
        return sym(t.letter)
    if t.op == CIRC:
        l = print_term(t.left, session)
        r = print_term(t.right, session)
        if t.left.op != LEAF:
            l = f"({l})"
        if t.right.op != LEAF:
            r = f"({r})"
        return f"{l}@{r}"
    l = print_term(t.left, session)
    r = print_term(t.right, session)
    if t.right.op == DOT:
        r = f"({r})"
    return f"{l} * {r}"


def _factor_str(deg: int, letter: int, session: Session) -> str:
    s = session.gens.symbol(letter)
    if deg == 0:
        return s
    if deg == 1:
        return f"D({s})"
    return f"D^{deg}({s})"


def _cword_str(w: CWord, session: Session) -> str:
    star = " & ".join(_factor_str(d, a, session) for d, a in w.factors[:w.star])
    for d, a in w.factors[w.star:]:
        star += f" * {_factor_str(d, a, session)}"
    return star


def _join_terms(items: list[tuple[Coeff, str]]) -> str:
    if not items:
        return "0"
    parts = []
    for i, (c, body) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        text = body if mag == 1 else f"{mag} {body}"
        if i == 0:
            parts.append(("-" + text) if neg else text)
        else:
            parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts)


def print_cpoly(p: CPoly, session: Session) -> str:
    return _join_terms([(c, _cword_str(w, session)) for w, c in sorted_words(p)])


def _dword_str(w: DWord, session: Session) -> str:
    if not w:
        return "e"
    return " * ".join(_factor_str(d, a, session) for d, a in w)


def print_dpoly(p: DPoly, session: Session) -> str:
    items = sorted(p.items(), key=lambda kv: kv[0], reverse=True)
    return _join_terms([(c, _dword_str(w, session)) for w, c in items])


def _combo_sorted(tc) -> list[tuple[Tableau, Coeff]]:
    return sorted(tc.items(),
                  key=lambda kv: ord_key(embedding.tableau_leading(kv[0])),
                  reverse=True)


def print_combo(tc, session: Session) -> str:
    return _join_terms([(c, print_term(tableau_term(tb), session))
                        for tb, c in _combo_sorted(tc)])


# ---------------------------------------------------------------------------
# JSON views.

def _coeff_json(c: Coeff) -> str:
    return str(c)


def cpoly_json(p: CPoly, session: Session) -> list:
    sym = session.gens.symbol
    return [{"coeff": _coeff_json(c),
             "word": {"star": [[d, sym(a)] for d, a in w.factors[:w.star]],
                      "dot": [[d, sym(a)] for d, a in w.factors[w.star:]]}}
            for w, c in sorted_words(p)]


def dpoly_json(p: DPoly, session: Session) -> list:
    sym = session.gens.symbol
    items = sorted(p.items(), key=lambda kv: kv[0], reverse=True)
    return [{"coeff": _coeff_json(c), "word": [[d, sym(a)] for d, a in w]}
            for w, c in items]


def combo_json(tc, session: Session) -> list:
    sym = session.gens.symbol
    return [{"coeff": _coeff_json(c),
             "tableau": {"dots": [sym(d) for d in tb.dots],
                         "head": sym(tb.head),
                         "rows": [{"body": [sym(b) for b in r.body],
                                   "tail": sym(r.tail)} for r in tb.rows]}}
            for tb, c in _combo_sorted(tc)]


# ---------------------------------------------------------------------------
# Seeded selftest.

def _rng(session: Session, name: str) -> random.Random:
    return random.Random(f"{session.seed}:{name}")


def _random_dpoly(rng, gens, max_terms=3) -> DPoly:
    out: DPoly = {}
    for _ in range(rng.randint(1, max_terms)):
        n = rng.randint(0, 2)
        w = differential.dword((rng.randint(0, 2), rng.choice(gens))
                               for _ in range(n))
        c = out.get(w, 0) + rng.choice((1, -1, 2, -2))
        if c:
            out[w] = c
        else:
            del out[w]
    return out


def _check_admissible_axioms(session: Session) -> int:
    rng = _rng(session, "admissible_axioms")
    gens = session.gens.ranks[:2] or session.gens.ranks
    mul, dv = admissible.poly_mul, admissible.poly_derive
    n = 0
    for _ in range(session.trials):
        x, y, z = (admissible.random_cpoly(rng, gens, 4, 3) for _ in range(3))
        assert mul("dot", x, y) == mul("dot", y, x)
        assert mul("dot", mul("dot", x, y), z) == mul("dot", x, mul("dot", y, z))
        assert mul("dot", x, poly_word(admissible.E_WORD)) == x
        assert mul("star", x, y) == mul("star", y, x)
        assert mul("star", mul("star", x, y), z) == mul("star", x, mul("star", y, z))
        assert mul("star", mul("dot", x, y), z) == mul("dot", x, mul("star", y, z))
        assert dv(mul("star", x, y)) == admissible.poly_add(
            mul("star", dv(x), y), mul("star", x, dv(y)))
        de = poly_word(admissible.DE_WORD)
        assert dv(mul("dot", x, y)) == admissible.poly_sub(
            admissible.poly_add(mul("dot", dv(x), y), mul("dot", x, dv(y))),
            mul("dot", mul("dot", x, y), de))
        n += 1
    return n


def _check_gdnp_axioms(session: Session) -> int:
    rng = _rng(session, "gdnp_axioms")
    gens = session.gens.ranks[:2] or session.gens.ranks
    mul, cc = admissible.poly_mul, embedding.circ
    sub, add = admissible.poly_sub, admissible.poly_add
    n = 0
    for _ in range(session.trials):
        x, y, z = (admissible.random_cpoly(rng, gens, 4, 3) for _ in range(3))
        assert sub(cc(x, cc(y, z)), cc(cc(x, y), z)) == \
            sub(cc(y, cc(x, z)), cc(cc(y, x), z))
        assert cc(cc(x, y), z) == cc(cc(x, z), y)
        assert cc(mul("dot", x, y), z) == mul("dot", x, cc(y, z))
        assert sub(mul("dot", cc(x, y), z), cc(x, mul("dot", y, z))) == \
            sub(mul("dot", cc(y, x), z), cc(y, mul("dot", x, z)))
        n += 1
    return n


def _check_order(session: Session) -> int:
    rng = _rng(session, "order")
    gens = session.gens.ranks[:2] or session.gens.ranks
    n = 0
    for _ in range(session.trials):
        w1 = admissible.random_cword(rng, gens, 4, 3)
        w2 = admissible.random_cword(rng, gens, 4, 3)
        w3 = admissible.random_cword(rng, gens, 4, 3)
        cmp = admissible.compare_ord(w1, w2)
        if cmp:
            lo, hi = (w1, w2) if cmp < 0 else (w2, w1)
            assert admissible.compare_ord(admissible.star(lo, w3),
                                          admissible.star(hi, w3)) < 0
            assert admissible.compare_ord(admissible.dot(lo, w3),
                                          admissible.dot(hi, w3)) < 0
        f = w1.factors
        if len(f) == 1 or f[0] > f[1]:
            raised = ((f[0][0] + 1, f[0][1]),) + f[1:]
            lw, _ = leading(admissible.derive(w1))
            assert lw == CWord(tuple(sorted(raised, reverse=True)), w1.star)
        n += 1
    return n


def _check_weights(session: Session) -> int:
    rng = _rng(session, "weights")
    gens = session.gens.ranks[:2] or session.gens.ranks
    wt = admissible.weight
    n = 0
    for _ in range(session.trials):
        w1 = admissible.random_cword(rng, gens, 4, 3)
        w2 = admissible.random_cword(rng, gens, 4, 3)
        assert wt(admissible.dot(w1, w2)) == wt(w1) + wt(w2)
        assert wt(admissible.star(w1, w2)) == wt(w1) + wt(w2) - 1
        assert all(wt(u) == wt(w1) + 1 for u in admissible.derive(w1))
        n += 1
    return n


def _check_phi_hom(session: Session) -> int:
    rng = _rng(session, "phi_hom")
    letters = (UNIT, *session.gens.ranks)
    n = 0
    for _ in range(session.trials):
        t1 = terms.random_term(rng, letters, rng.randint(1, 4))
        t2 = terms.random_term(rng, letters, rng.randint(1, 4))
        assert embedding.phi(terms.dot(t1, t2)) == \
            admissible.poly_mul("dot", embedding.phi(t1), embedding.phi(t2))
        assert embedding.phi(terms.circ(t1, t2)) == \
            embedding.circ(embedding.phi(t1), embedding.phi(t2))
        n += 1
    return n


def _check_bijection(session: Session) -> int:
    gens = session.gens.ranks[:2] or session.gens.ranks
    n = 0
    for w in admissible.enumerate_cwords(gens, 3, 2):
        if admissible.weight(w) != 0:
            continue
        tb = embedding.word_to_tableau(w)
        assert embedding.tableau_leading(tb) == w
        n += 1
    return n


def _check_normalizers(session: Session) -> int:
    rng = _rng(session, "normalizers")
    letters = (UNIT, *session.gens.ranks)
    n = 0
    for _ in range(session.trials):
        t = terms.random_term(rng, letters, rng.randint(1, 7))
        ne = embedding.normalize_embed(t)
        assert embedding.combo_phi(ne) == embedding.phi(t)
        assert rewriter.normalize_rewrite(t) == ne
        n += 1
    return n


def _check_rewrite_steps(session: Session) -> int:
    rng = _rng(session, "rewrite_steps")
    letters = (UNIT, *session.gens.ranks)
    todo = [terms.random_term(rng, letters, rng.randint(2, 6))
            for _ in range(min(session.trials, 50))]
    with rewriter.phi_check():
        for t in todo:
            rewriter.normalize_rewrite(t)
    return len(todo)


def _check_differential(session: Session) -> int:
    rng = _rng(session, "differential")
    gens = session.gens.ranks
    letters = (UNIT, *gens)
    mul, dv = differential.dp_mul, differential.dderive
    cc = lambda f, g: mul(f, dv(g))
    sub = lambda p, q: differential.dp_add(p, differential.dp_scale(-1, q))
    n = 0
    for _ in range(session.trials):
        x, y, z = (_random_dpoly(rng, gens) for _ in range(3))
        assert cc(x, mul(y, z)) == differential.dp_add(mul(cc(x, y), z),
                                                       mul(cc(x, z), y))
        assert sub(cc(x, cc(y, z)), cc(cc(x, y), z)) == \
            sub(cc(y, cc(x, z)), cc(cc(y, x), z))
        assert cc(cc(x, y), z) == cc(cc(x, z), y)
        t = terms.random_term(rng, letters, rng.randint(1, 5))
        assert theta(terms.circ(t, terms.E)) == {}
        w = differential.dword((rng.randint(0, 3), rng.choice(gens))
                               for _ in range(rng.randint(0, 3)))
        assert theta(differential.normal_word(w)) == {w: 1}
        n += 1
    return n


def _check_roundtrip(session: Session) -> int:
    rng = _rng(session, "roundtrip")
    letters = (UNIT, *session.gens.ranks)
    n = 0
    for _ in range(session.trials):
        t = terms.random_term(rng, letters, rng.randint(1, 8))
        assert parse_term(print_term(t, session), session) == t
        n += 1
    return n


_CHECKS = [
    ("admissible_axioms", _check_admissible_axioms),
    ("gdnp_axioms", _check_gdnp_axioms),
    ("order", _check_order),
    ("weights", _check_weights),
    ("phi_homomorphism", _check_phi_hom),
    ("tableau_bijection", _check_bijection),
    ("normalizer_agreement", _check_normalizers),
    ("rewrite_step_exactness", _check_rewrite_steps),
    ("differential", _check_differential),
    ("parse_print_roundtrip", _check_roundtrip),
]


def selftest(session: Session) -> dict:
    checks = []
    ok = True
    for name, fn in _CHECKS:
        try:
            ran = fn(session)
            checks.append({"name": name, "trials": ran, "failures": 0})
        except AssertionError as exc:
            ok = False
            checks.append({"name": name, "trials": 0, "failures": 1,
                           "error": str(exc)})
    return {"seed": session.seed, "trials": session.trials,
            "checks": checks, "ok": ok}


# ---------------------------------------------------------------------------
# Command line.

def _common_options(p: argparse.ArgumentParser) -> None:
    sup = argparse.SUPPRESS
    p.add_argument("--gens", default=sup, help="comma-separated generator names")
    p.add_argument("--seed", type=int, default=sup)
    p.add_argument("--trials", type=int, default=sup)
    p.add_argument("--method", choices=("embed", "rewrite"), default=sup)
    p.add_argument("--max-len", type=int, default=sup, dest="max_len")
    p.add_argument("--max-deg", type=int, default=sup, dest="max_deg")
    p.add_argument("--format", choices=("text", "json"), default=sup, dest="fmt")


_DEFAULTS = {"gens": "a,b", "seed": 0, "trials": 200, "method": "embed",
             "max_len": 4, "max_deg": 2, "fmt": "text"}


def _build_parser() -> argparse.ArgumentParser:
    main = argparse.ArgumentParser(prog="gdnp", description=__doc__)
    _common_options(main)
    sub = main.add_subparsers(dest="command", required=True)

    def cmd(name, **kw):
        p = sub.add_parser(name, **kw)
        _common_options(p)
        return p

    cmd("normalize", help="tableau expansion of a term").add_argument("expr")
    cmd("phi", help="image in the admissible model").add_argument("expr")
    cmd("theta", help="image in the differential model").add_argument("expr")
    cmd("leading", help="leading word of the image").add_argument("expr")
    d = cmd("dims", help="graded dimension")
    d.add_argument("--letters", required=True,
                   help="comma-separated generator multiset (may be empty)")
    d.add_argument("--circ", required=True, type=int)
    m = cmd("member", help="bounded ideal membership")
    m.add_argument("--rel", required=True, help="relation file")
    m.add_argument("--in", dest="where", choices=("C", "GDNP0"), default="GDNP0")
    m.add_argument("expr")
    pc = cmd("pbw-check", help="compare the two ideal spans at the bound")
    pc.add_argument("--rel", required=True, help="relation file")
    cmd("selftest", help="seeded deterministic property suite")
    return main


def _session_from(ns: argparse.Namespace) -> Session:
    opts = dict(_DEFAULTS)
    opts.update({k: v for k, v in vars(ns).items() if k in opts})
    names = [s for s in opts["gens"].split(",") if s]
    return Session(gens=Alphabet(names), seed=opts["seed"],
                   trials=opts["trials"],
                   bounds=Bounds(opts["max_len"], opts["max_deg"]),
                   method=opts["method"], fmt=opts["fmt"])


def _read_relations(path: str, session: Session) -> list[dict[Term, Coeff]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(parse_linear(line, session))
    return out


def _emit(session: Session, text: str, data) -> None:
    if session.fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def run(argv) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        session = _session_from(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _dispatch(ns, session)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except GdnpError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(ns: argparse.Namespace, session: Session) -> int:
    cmd = ns.command
    if cmd == "normalize":
        t = parse_term(ns.expr, session)
        tc = (embedding.normalize_embed(t) if session.method == "embed"
              else rewriter.normalize_rewrite(t))
        _emit(session, print_combo(tc, session), combo_json(tc, session))
    elif cmd == "phi":
        p = embedding.phi(parse_term(ns.expr, session))
        _emit(session, print_cpoly(p, session), cpoly_json(p, session))
    elif cmd == "theta":
        p = theta(parse_term(ns.expr, session))
        _emit(session, print_dpoly(p, session), dpoly_json(p, session))
    elif cmd == "leading":
        w, c = leading(embedding.phi(parse_term(ns.expr, session)))
        _emit(session, _join_terms([(c, _cword_str(w, session))]),
              cpoly_json({w: c}, session))
    elif cmd == "dims":
        mono = terms.monomial(session.gens.rank(s)
                              for s in ns.letters.split(",") if s)
        dim = presentations.graded_dim(mono, ns.circ)
        _emit(session, str(dim),
              {"letters": sorted((session.gens.symbol(x) for x in mono),
                                 reverse=True),
               "circ": ns.circ, "dim": dim})
    elif cmd == "member":
        rels = [embedding.phi_linear(c) for c in _read_relations(ns.rel, session)]
        f = embedding.phi_linear(parse_linear(ns.expr, session))
        got = presentations.member(f, rels, session.bounds, session.gens.ranks,
                                   where=ns.where)
        b = session.bounds
        text = ("true" if got else
                f"unknown at bound (max-len {b.max_len}, max-deg {b.max_deg})")
        _emit(session, text,
              {"member": got, "definitive": got,
               "bounds": {"max_len": b.max_len, "max_deg": b.max_deg}})
    elif cmd == "pbw-check":
        rels = [embedding.phi_linear(c) for c in _read_relations(ns.rel, session)]
        rep = presentations.pbw_check(rels, session.bounds, session.gens.ranks)
        text = (f"rank(weight-0 span) = {rep.rank_gdnp0}, "
                f"rank(ideal weight-0 slice) = {rep.rank_c_weight0}, "
                f"consistent = {str(rep.consistent).lower()}")
        _emit(session, text,
              {"rank_gdnp0": rep.rank_gdnp0,
               "rank_c_weight0": rep.rank_c_weight0,
               "consistent": rep.consistent,
               "bounds": {"max_len": rep.bounds.max_len,
                          "max_deg": rep.bounds.max_deg}})
        return 0 if rep.consistent else 1
    elif cmd == "selftest":
        report = selftest(session)
        if session.fmt == "json":
            print(json.dumps(report, sort_keys=True, indent=2))
        else:
            for c in report["checks"]:
                status = "ok" if not c["failures"] else "FAIL"
                print(f"{c['name']}: {status} ({c['trials']} trials)")
            print("ok" if report["ok"] else "FAILED")
        return 0 if report["ok"] else 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
