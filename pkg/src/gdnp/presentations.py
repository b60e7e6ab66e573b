"""Finitely presented quotients at bounded degree.

Ideals are handled through explicit spanning sets w . D^t(s) enumerated
below a bound on word shape (factor count, total degree), echelonized by
exact row reduction keyed on the leading-word order.  Membership answers
are definitive when true; a false answer only says "not at this bound".
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Sequence

from .admissible import (CPoly, CWord, cword, dot, enumerate_cwords, leading,
                         ord_key, poly_derive, poly_mul, poly_scale, poly_sub,
                         poly_word, weight)
from .embedding import is_weight0, phi
from .errors import NotWeightZero
from .terms import UNIT, Alphabet, Coeff, Monomial, Term, enumerate_tableaux


class Bounds(NamedTuple):
    max_len: int   # factor count of enumerated words
    max_deg: int   # total degree


class Presentation(NamedTuple):
    gens: Alphabet
    relations: tuple[CPoly, ...]


def presentation(gens: Alphabet, relations: Iterable) -> Presentation:
    """Relations may be CPoly dicts or Terms (which are sent through the
    embedding); zero relations are rejected."""
    rels = []
    for r in relations:
        p = phi(r) if isinstance(r, Term) else dict(r)
        if not p:
            raise ValueError("zero relation")
        rels.append(p)
    return Presentation(gens, tuple(rels))


def _within(p: CPoly, b: Bounds) -> bool:
    return all(len(w.factors) <= b.max_len
               and sum(d for d, _ in w.factors) <= b.max_deg
               for w in p)


def ideal_span_c(S: Sequence[CPoly], b: Bounds, gens: Sequence[int]) -> list[CPoly]:
    """Spanning elements w . D^t(s) of the two-sided ideal of the admissible
    algebra, every word of which respects the bounds; deterministic order
    (relation, then t, then w)."""
    words = enumerate_cwords(gens, b.max_len, b.max_deg)
    out: list[CPoly] = []
    for s in S:
        ds = dict(s)
        for t in range(b.max_deg + 1):
            if ds and _within(ds, b):
                for w in words:
                    el = poly_mul("dot", poly_word(w), ds)
                    if el and _within(el, b):
                        out.append(el)
            ds = poly_derive(ds)
    return out


def ideal_span_gdnp0(S: Sequence[CPoly], b: Bounds, gens: Sequence[int]) -> list[CPoly]:
    """The weight-0 slice of the spanning set: elements whose leading word
    (hence every word) has weight 0.  Relations must be weight-0."""
    for s in S:
        if not is_weight0(s):
            raise NotWeightZero("relation outside the weight-0 subalgebra")
    out = []
    for el in ideal_span_c(S, b, gens):
        if weight(leading(el)[0]) == 0:
            out.append(el)
    return out


def row_reduce(basis: Iterable[CPoly]) -> list[CPoly]:
    """Exact echelonization: distinct leading words, fully reduced rows,
    monic leading coefficients; same span.  Descending leading order."""
    echelon: dict[CWord, CPoly] = {}
    for p in basis:
        p = _reduce_against(p, echelon)
        if not p:
            continue
        w, c = leading(p)
        p = poly_scale(_inv(c), p)
        for lw, q in list(echelon.items()):
            if w in q:
                echelon[lw] = poly_sub(q, poly_scale(q[w], p))
        echelon[w] = p
    return [echelon[w] for w in sorted(echelon, key=ord_key, reverse=True)]


def _reduce_against(p: CPoly, echelon: dict[CWord, CPoly]) -> CPoly:
    p = dict(p)
    again = True
    while again and p:
        again = False
        for w in sorted(p, key=ord_key, reverse=True):
            q = echelon.get(w)
            if q is not None:
                p = poly_sub(p, poly_scale(p[w], q))
                again = True
                break
    return p


def _inv(c: Coeff):
    from fractions import Fraction
    q = 1 / Fraction(c)
    return int(q) if q.denominator == 1 else q


def member(f: CPoly, S: Sequence, b: Bounds, gens: Sequence[int],
           where: str = "GDNP0") -> bool:
    """Does f reduce to zero against the bounded spanning set?  True is
    definitive; False only rules out a certificate at this bound.  S
    entries may be Terms or CPoly dicts; `where` is "C" or "GDNP0"."""
    rels = [phi(s) if isinstance(s, Term) else s for s in S]
    span = (ideal_span_c if where == "C" else ideal_span_gdnp0)(rels, b, gens)
    return not _reduce_against(f, {leading(p)[0]: p for p in row_reduce(span)})


class PbwReport(NamedTuple):
    rank_gdnp0: int
    rank_c_weight0: int
    consistent: bool
    bounds: Bounds


def pbw_check(S: Sequence[Term], b: Bounds, gens: Sequence[int]) -> PbwReport:
    """Compare, at the given bounds, the rank of the weight-0 spanning set
    with the weight-0 slice of the full ideal's echelon; the two spans
    coincide, so the ranks must agree."""
    rels = [phi(s) if isinstance(s, Term) else s for s in S]
    rank0 = len(row_reduce(ideal_span_gdnp0(rels, b, gens))) if rels else 0
    full = row_reduce(ideal_span_c(rels, b, gens)) if rels else []
    rank_c = sum(1 for p in full if weight(leading(p)[0]) == 0)
    return PbwReport(rank0, rank_c, rank0 == rank_c, b)


# ---------------------------------------------------------------------------
# Graded dimensions: tableau count against weight-0 word count.

def enumerate_weight0_cwords(xletters: Monomial, deg: int) -> list[CWord]:
    """All weight-0 basis words with the given generator multiset and total
    degree, enumerated directly: a weight-0 word has star count deg + 1,
    its dot factors are degree-0 generators, and unit star factors occur
    only in all-star words."""
    xletters = tuple(sorted(xletters, reverse=True))
    nstar = deg + 1
    out = []
    for dotpart in _submultisets(xletters):
        starx = _msub(xletters, dotpart)
        ne = nstar - len(starx)
        if ne < 0:
            continue
        if dotpart and ne > 0:
            # unit star factors would sort below the generator dot factors
            continue
        letters = list(starx) + [UNIT] * ne
        for degs in _degree_splits(deg, len(letters)):
            fs = list(zip(degs, letters))
            if dotpart and any(f == (0, UNIT) for f in fs):
                continue
            w = cword(fs + [(0, a) for a in dotpart], nstar)
            if w not in out:
                out.append(w)
    out.sort(key=ord_key)
    return list(dict.fromkeys(out))


def _submultisets(m: Monomial):
    support = sorted(set(m), reverse=True)
    ranges = [range(m.count(x) + 1) for x in support]
    for picks in itertools.product(*ranges):
        yield tuple(x for x, k in zip(support, picks) for _ in range(k))


def _msub(a: Monomial, b: Iterable[int]) -> Monomial:
    rest = list(a)
    for x in b:
        rest.remove(x)
    return tuple(rest)


def _degree_splits(total: int, n: int):
    """All length-n tuples of nonnegative ints summing to total."""
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _degree_splits(total - first, n - 1):
            yield (first,) + rest


def graded_dim(xletters: Monomial, circ_count: int) -> int:
    """Dimension of the multigraded component: the tableau count, asserted
    equal to the independent weight-0 word count."""
    ntab = len(enumerate_tableaux(xletters, circ_count))
    nwords = len(enumerate_weight0_cwords(xletters, circ_count))
    if ntab != nwords:
        raise AssertionError(
            f"graded dimension mismatch at {xletters}, {circ_count}: "
            f"{ntab} tableaux vs {nwords} words")
    return ntab
