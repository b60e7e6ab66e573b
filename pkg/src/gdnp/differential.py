"""Differential quotient: the free commutative associative differential
algebra on the generators, with circ realized as f.D(g).

Basis words are multisets of (degree, generator) factors (no unit factors;
the derivation kills the unit).  ``theta`` maps term trees homomorphically;
``normal_word`` produces the canonical preimage term of a basis word, built
from blocks e circ e circ ... circ a.
"""

from __future__ import annotations

from typing import Iterable

from .terms import CIRC, DOT, LEAF, UNIT, Coeff, E, Term, circ, dot, leaf

DWord = tuple
DPoly = dict

D_UNIT: DWord = ()


def dword(factors: Iterable[tuple[int, int]]) -> DWord:
    fs = tuple(sorted(factors, reverse=True))
    if any(a == UNIT for _, a in fs):
        raise ValueError("unit factors do not occur in differential words")
    return fs


def dmul(w1: DWord, w2: DWord) -> DWord:
    return tuple(sorted(w1 + w2, reverse=True))


def dp_word(w: DWord, c: Coeff = 1) -> DPoly:
    return {w: c} if c else {}


def dp_add(p: DPoly, q: DPoly) -> DPoly:
    out = dict(p)
    for w, c in q.items():
        s = out.get(w, 0) + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def dp_scale(c: Coeff, p: DPoly) -> DPoly:
    if not c:
        return {}
    return {w: c * v for w, v in p.items()}


def dp_mul(p: DPoly, q: DPoly) -> DPoly:
    out: DPoly = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = dmul(w1, w2)
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def dderive(p: DPoly) -> DPoly:
    """Leibniz derivation; the unit has derivative zero."""
    out: DPoly = {}
    for w, c in p.items():
        for t in range(len(w)):
            raised = w[:t] + ((w[t][0] + 1, w[t][1]),) + w[t + 1:]
            u = tuple(sorted(raised, reverse=True))
            s = out.get(u, 0) + c
            if s:
                out[u] = s
            else:
                del out[u]
    return out


def theta(t: Term) -> DPoly:
    """Homomorphic image: letters to letter words (e to the unit), dot to
    the product, circ to f.D(g)."""
    if t.op == LEAF:
        return {D_UNIT: 1} if t.letter == UNIT else {((0, t.letter),): 1}
    if t.op == DOT:
        return dp_mul(theta(t.left), theta(t.right))
    return dp_mul(theta(t.left), dderive(theta(t.right)))


def normal_word(w: DWord) -> Term:
    """Canonical term of a basis word: the left-normed dot product of the
    blocks [e circ ... circ a]_i in non-increasing factor order."""
    if not w:
        return E
    blocks = []
    for deg, a in w:
        b = leaf(a)
        for _ in range(deg):
            b = circ(E, b)
        blocks.append(b)
    t = blocks[0]
    for b in blocks[1:]:
        t = dot(t, b)
    return t


def dgdnp_normalize(t: Term) -> DPoly:
    """Normal-word expansion of a term in the differential quotient: the
    coefficient of the basis word w is the coefficient of normal_word(w)."""
    return theta(t)
