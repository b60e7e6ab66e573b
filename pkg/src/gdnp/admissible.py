"""The free special admissible algebra on the letters.

Basis words are sorted factor lists ``D^i a`` with a star count: the first
``star`` factors are joined by the second commutative product ``*`` and the
remaining ones by the unital product; the whole factor list is kept
non-increasing under the lexicographic order on (degree, letter).  A word
with a dot factor never ends in a bare unit factor (0, e); the unit word
``e`` is the single factor (0, e).

Polynomials are plain dicts word -> coefficient with exact (int / Fraction)
coefficients and no stored zeros.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidWord, ZeroPolynomial
from .terms import UNIT, Coeff


class CWord(NamedTuple):
    factors: tuple[tuple[int, int], ...]  # (degree, letter), non-increasing
    star: int                             # leading factors joined by *


CPoly = dict


def cword(factors: Iterable[tuple[int, int]], star: int) -> CWord:
    """Canonical basis word: sorts the factors and validates the star count
    and the trailing-unit rule."""
    fs = tuple(sorted(factors, reverse=True))
    n = len(fs)
    if n == 0:
        raise InvalidWord("a word needs at least one factor")
    if not 1 <= star <= n:
        raise InvalidWord(f"star count {star} outside 1..{n}")
    if star < n and fs[-1] == (0, UNIT):
        raise InvalidWord("dot part of a word may not end in the unit factor")
    return CWord(fs, star)


def letter_word(letter: int) -> CWord:
    return CWord(((0, letter),), 1)


E_WORD = letter_word(UNIT)
DE_WORD = CWord(((1, UNIT),), 1)


def ord_key(w: CWord) -> tuple[int, ...]:
    key = [w.star - 1]
    for d, a in w.factors:
        key.append(d)
        key.append(a)
    key.append(-1)
    return tuple(key)


def compare_ord(w1: CWord, w2: CWord) -> int:
    k1, k2 = ord_key(w1), ord_key(w2)
    return (k1 > k2) - (k1 < k2)


def weight(w: CWord) -> int:
    """Total degree minus the number of star operations."""
    return sum(d for d, _ in w.factors) - (w.star - 1)


def _merge(w1: CWord, w2: CWord, star: int) -> CWord:
    fs = sorted(w1.factors + w2.factors, reverse=True)
    while len(fs) > star and fs[-1] == (0, UNIT):
        fs.pop()
    return CWord(tuple(fs), star)


def dot(w1: CWord, w2: CWord) -> CWord:
    """Unital product: merge the factors, star count j1 + j2 - 1, and drop
    trailing unit factors that fall strictly after the star block."""
    return _merge(w1, w2, w1.star + w2.star - 1)


def star(w1: CWord, w2: CWord) -> CWord:
    """Second product: merge the factors with star count j1 + j2."""
    return _merge(w1, w2, w1.star + w2.star)


def derive(w: CWord) -> CPoly:
    """Derivation on a basis word: raise each factor degree once, minus
    m * (w . De) where m is the number of dot factors."""
    fs = w.factors
    out: CPoly = {}
    for t in range(len(fs)):
        raised = fs[:t] + ((fs[t][0] + 1, fs[t][1]),) + fs[t + 1:]
        u = CWord(tuple(sorted(raised, reverse=True)), w.star)
        out[u] = out.get(u, 0) + 1
    m = len(fs) - w.star
    if m:
        u = dot(w, DE_WORD)
        c = out.get(u, 0) - m
        if c:
            out[u] = c
        else:
            del out[u]
    return out


# ---------------------------------------------------------------------------
# Polynomials.

def poly_word(w: CWord, c: Coeff = 1) -> CPoly:
    return {w: c} if c else {}


def poly_add(p: CPoly, q: CPoly) -> CPoly:
    out = dict(p)
    for w, c in q.items():
        s = out.get(w, 0) + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def poly_sub(p: CPoly, q: CPoly) -> CPoly:
    out = dict(p)
    for w, c in q.items():
        s = out.get(w, 0) - c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def poly_scale(c: Coeff, p: CPoly) -> CPoly:
    if not c:
        return {}
    return {w: c * v for w, v in p.items()}


def poly_mul(kind: str, p: CPoly, q: CPoly) -> CPoly:
    """Bilinear extension of the basis products; kind is 'dot' or 'star'."""
    mul = dot if kind == "dot" else star
    out: CPoly = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = mul(w1, w2)
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def poly_derive(p: CPoly) -> CPoly:
    out: CPoly = {}
    for w, c in p.items():
        for u, k in derive(w).items():
            s = out.get(u, 0) + c * k
            if s:
                out[u] = s
            else:
                del out[u]
    return out


def leading(p: CPoly) -> tuple[CWord, Coeff]:
    """The order-maximal word of a nonzero polynomial, with coefficient."""
    if not p:
        raise ZeroPolynomial("zero polynomial has no leading word")
    w = max(p, key=ord_key)
    return w, p[w]


def sorted_words(p: CPoly) -> list[tuple[CWord, Coeff]]:
    """Deterministic view, descending order."""
    return [(w, p[w]) for w in sorted(p, key=ord_key, reverse=True)]


# ---------------------------------------------------------------------------
# Enumeration and seeded random data (selftest and bounded searches).

def enumerate_cwords(gens: Sequence[int], max_len: int, max_deg: int) -> list[CWord]:
    """All basis words over the given generator ranks with at most max_len
    factors and total degree at most max_deg, in ascending order."""
    universe = sorted(
        ((d, a) for d in range(max_deg + 1) for a in (UNIT, *gens)),
        reverse=True)
    out = []
    for n in range(1, max_len + 1):
        for fs in itertools.combinations_with_replacement(universe, n):
            if sum(d for d, _ in fs) > max_deg:
                continue
            for j in range(1, n + 1):
                if j < n and fs[-1] == (0, UNIT):
                    continue
                out.append(CWord(fs, j))
    out.sort(key=ord_key)
    return out


def random_cword(rng, gens: Sequence[int], max_len: int, max_deg: int) -> CWord:
    letters = (UNIT, *gens)
    while True:
        n = rng.randint(1, max_len)
        budget = max_deg
        fs = []
        for _ in range(n):
            d = rng.randint(0, budget)
            budget -= d
            fs.append((d, rng.choice(letters)))
        try:
            return cword(fs, rng.randint(1, n))
        except InvalidWord:
            continue


_COEFFS = (1, -1, 2, -2, 3, -3)


def random_cpoly(rng, gens: Sequence[int], max_len: int, max_deg: int,
                 max_terms: int = 3) -> CPoly:
    out: CPoly = {}
    for _ in range(rng.randint(1, max_terms)):
        w = random_cword(rng, gens, max_len, max_deg)
        c = out.get(w, 0) + rng.choice(_COEFFS)
        if c:
            out[w] = c
        else:
            del out[w]
    return out
