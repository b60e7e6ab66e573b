"""Embedding of the free two-product algebra into the admissible model.

``phi`` sends a term tree to its polynomial image: letters go to letter
words, dot to the unital product, and circ to ``f * D(g)``.  Images of terms
are weight 0, their total degree equals the circ count, and the generator
multiset is preserved, which makes the supports finite grade by grade.

``normalize_embed`` rebuilds the tableau expansion of a term greedily from
the leading words of its image; the leading word of a tableau term is given
in closed form by ``tableau_leading`` and inverted by ``word_to_tableau``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .admissible import (CPoly, CWord, cword, leading, poly_mul, poly_derive,
                         poly_scale, poly_sub, poly_word, letter_word, weight)
from .errors import BadWeight
from .terms import CIRC, DOT, LEAF, Coeff, Row, Tableau, Term, tableau, tableau_term

TableauCombo = dict


def circ(f: CPoly, g: CPoly) -> CPoly:
    """The derived circ product f * D(g) of the admissible model."""
    return poly_mul("star", f, poly_derive(g))


@lru_cache(maxsize=300_000)
def phi(t: Term) -> CPoly:
    """Homomorphic image of a term.  Treat the result as immutable."""
    if t.op == LEAF:
        return poly_word(letter_word(t.letter))
    if t.op == DOT:
        return poly_mul("dot", phi(t.left), phi(t.right))
    return circ(phi(t.left), phi(t.right))


def phi_linear(combo: dict[Term, Coeff]) -> CPoly:
    out: CPoly = {}
    for t, c in combo.items():
        for w, v in phi(t).items():
            s = out.get(w, 0) + c * v
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def is_weight0(p: CPoly) -> bool:
    return all(weight(w) == 0 for w in p)


def tableau_leading(tb: Tableau) -> CWord:
    """Leading word of the image of a tableau term, in closed form: one
    star factor D^r(tail) per row, the head and all body letters at degree
    zero in the star block, and the dot letters as dot factors."""
    fs = [(len(r.body) + 1, r.tail) for r in tb.rows]
    fs.append((0, tb.head))
    nstar = 1
    for r in tb.rows:
        fs.extend((0, b) for b in r.body)
        nstar += len(r.body) + 1
    fs.extend((0, d) for d in tb.dots)
    return cword(fs, nstar)


def word_to_tableau(w: CWord) -> Tableau:
    """Inverse of `tableau_leading` on weight-0 words: positive-degree star
    factors become the rows, the largest degree-0 star factor the head, the
    remaining ones fill the bodies row-major, and dot factors become dots."""
    if weight(w) != 0:
        raise BadWeight(f"word of weight {weight(w)} has no tableau")
    starpart = w.factors[:w.star]
    dots = tuple(a for _, a in w.factors[w.star:])
    shape = [(d, a) for d, a in starpart if d > 0]
    zeros = [a for d, a in starpart if d == 0]
    head, body_pool = zeros[0], zeros[1:]
    rows = []
    for d, a in shape:
        rows.append(Row(tuple(body_pool[:d - 1]), a))
        body_pool = body_pool[d - 1:]
    return tableau(dots, head, rows)


def _div(a: Coeff, b: Coeff) -> Coeff:
    if b == 1:
        return a
    q = Fraction(a) / Fraction(b)
    return int(q) if q.denominator == 1 else q


@lru_cache(maxsize=200_000)
def _word_tableau_image(w: CWord) -> tuple[Tableau, tuple, Coeff]:
    tb = word_to_tableau(w)
    g = phi(tableau_term(tb))
    lw, lc = leading(g)
    assert lw == w
    return tb, tuple(g.items()), lc


def normalize_embed(t: Term) -> TableauCombo:
    """Tableau expansion of a term: repeatedly peel the leading word of the
    remaining image and subtract the image of the matching tableau term."""
    return normalize_poly(phi(t))


def normalize_poly(p: CPoly) -> TableauCombo:
    """Tableau expansion of a weight-0 polynomial of the admissible model."""
    out: TableauCombo = {}
    rest = dict(p)
    while rest:
        w, a = leading(rest)
        tb, image, lc = _word_tableau_image(w)
        c = _div(a, lc)
        out[tb] = c
        for u, v in image:
            s = rest.get(u, 0) - c * v
            if s:
                rest[u] = s
            else:
                del rest[u]
    return out


def combo_phi(tc: TableauCombo) -> CPoly:
    """Image of a tableau combination (for exactness cross-checks)."""
    return phi_linear({tableau_term(tb): c for tb, c in tc.items()})


def combo_add(a: TableauCombo, b: TableauCombo) -> TableauCombo:
    out = dict(a)
    for tb, c in b.items():
        s = out.get(tb, 0) + c
        if s:
            out[tb] = s
        else:
            del out[tb]
    return out


def combo_scale(c: Coeff, a: TableauCombo) -> TableauCombo:
    if not c:
        return {}
    return {tb: c * v for tb, v in a.items()}
