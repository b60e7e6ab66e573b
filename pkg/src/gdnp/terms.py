"""Term trees of the free algebra with operations circ and dot.

Letters are plain ints: 0 is the distinguished unit letter ``e`` and the
generators are numbered 1, 2, ... in their declared ascending order, so the
built-in int order is exactly the letter order (e below every generator).
An :class:`Alphabet` maps symbols to ranks and back.

A :class:`Term` is an immutable binary tree over the two operators with
letters at the leaves.  Node statistics (circ count, letter counts, root
number) are computed once at construction, so `counts` and `root` are O(1).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Union

UNIT = 0

Coeff = Union[int, Fraction]
Monomial = tuple[int, ...]

LEAF, CIRC, DOT = 0, 1, 2
_OPNAMES = {CIRC: "circ", DOT: "dot"}


class Generator(NamedTuple):
    symbol: str
    rank: int


class Alphabet:
    """Declared ascending list of generator symbols.

    Rank 0 is reserved for the unit letter ``e``; generators get ranks
    1..n in declaration order.
    """

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        seen = set()
        for s in syms:
            if s in seen:
                raise ValueError(f"duplicate generator {s!r}")
            seen.add(s)
        self._symbols = ("e",) + syms
        self._ranks = {s: i for i, s in enumerate(self._symbols)}

    @property
    def generators(self) -> tuple[Generator, ...]:
        return tuple(Generator(s, i + 1) for i, s in enumerate(self._symbols[1:]))

    @property
    def ranks(self) -> tuple[int, ...]:
        """Generator ranks 1..n, ascending."""
        return tuple(range(1, len(self._symbols)))

    def rank(self, symbol: str) -> int:
        try:
            return self._ranks[symbol]
        except KeyError:
            raise KeyError(f"unknown letter {symbol!r}") from None

    def symbol(self, letter: int) -> str:
        return self._symbols[letter]

    def __len__(self) -> int:
        return len(self._symbols) - 1

    def __repr__(self) -> str:
        return f"Alphabet({list(self._symbols[1:])!r})"


class Term:
    """Immutable word of the free {circ, dot}-algebra over the letters.

    Structural equality; hash precomputed.  ``circ_count``, ``x_count``,
    ``e_count`` and ``root_num`` are filled in at construction.
    """

    __slots__ = ("op", "letter", "left", "right",
                 "circ_count", "x_count", "e_count", "root_num", "_hash")

    def __init__(self, op: int, letter: int = UNIT,
                 left: Optional["Term"] = None, right: Optional["Term"] = None):
        self.op = op
        self.letter = letter
        self.left = left
        self.right = right
        if op == LEAF:
            self.circ_count = 0
            self.x_count = 1 if letter != UNIT else 0
            self.e_count = 1 - self.x_count
            self.root_num = 0
            self._hash = hash((LEAF, letter))
        else:
            assert left is not None and right is not None
            self.circ_count = left.circ_count + right.circ_count + (op == CIRC)
            self.x_count = left.x_count + right.x_count
            self.e_count = left.e_count + right.e_count
            if op == CIRC:
                self.root_num = left.root_num + max(1, right.root_num)
            else:
                self.root_num = left.root_num + right.root_num
            self._hash = hash((op, left._hash, right._hash))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        if self._hash != other._hash or self.op != other.op:
            return False
        if self.op == LEAF:
            return self.letter == other.letter
        return self.left == other.left and self.right == other.right

    def __repr__(self) -> str:
        if self.op == LEAF:
            return f"leaf({self.letter})"
        return f"{_OPNAMES[self.op]}({self.left!r}, {self.right!r})"


_LEAVES: dict[int, Term] = {}


def leaf(letter: int) -> Term:
    t = _LEAVES.get(letter)
    if t is None:
        t = _LEAVES[letter] = Term(LEAF, letter)
    return t


def circ(left: Term, right: Term) -> Term:
    return Term(CIRC, left=left, right=right)


def dot(left: Term, right: Term) -> Term:
    return Term(DOT, left=left, right=right)


E = leaf(UNIT)


def counts(t: Term) -> tuple[int, int, int]:
    """(number of circ nodes, number of generator leaves, number of e leaves)."""
    return (t.circ_count, t.x_count, t.e_count)


def root(t: Term) -> int:
    """Root number: 0 on leaves, additive over dot, and circ adds
    max(1, root of the right argument)."""
    return t.root_num


# ---------------------------------------------------------------------------
# Commutative monomials over the generators (the unit is the empty tuple).

def monomial(letters: Iterable[int]) -> Monomial:
    m = tuple(sorted(letters, reverse=True))
    if m and m[-1] < 1:
        raise ValueError("monomials contain generators only")
    return m


def deglex_key(m: Monomial) -> tuple:
    return (len(m), m)


def deglex_compare(u: Monomial, v: Monomial) -> int:
    """-1 / 0 / 1 for the degree-then-lexicographic order; longer is greater,
    equal lengths compare position by position on the sorted sequences."""
    ku, kv = deglex_key(u), deglex_key(v)
    return (ku > kv) - (ku < kv)


def mono_mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(sorted(u + v, reverse=True))


def mono_term(m: Monomial) -> Term:
    """Canonical term of a monomial: left-normed dot product, letters
    non-increasing; the empty monomial is the unit leaf."""
    if not m:
        return E
    t = leaf(m[0])
    for x in m[1:]:
        t = dot(t, leaf(x))
    return t


def term_monomial(t: Term) -> Optional[Monomial]:
    """The monomial of a circ-free term (unit leaves absorbed), else None."""
    if t.circ_count:
        return None
    out: list[int] = []
    stack = [t]
    while stack:
        s = stack.pop()
        if s.op == LEAF:
            if s.letter != UNIT:
                out.append(s.letter)
        else:
            stack.append(s.left)
            stack.append(s.right)
    return tuple(sorted(out, reverse=True))


# ---------------------------------------------------------------------------
# Tableaux: the canonical basis terms.

class Row(NamedTuple):
    body: tuple[int, ...]
    tail: int


class Tableau(NamedTuple):
    """dots * (head circ row_1 circ ... circ row_n), left-normed, where each
    row is the right-normed circ product of its body letters and tail."""
    dots: Monomial
    head: int
    rows: tuple[Row, ...]


def chain(tb: Tableau) -> tuple[int, ...]:
    """Head followed by all body letters in row order."""
    c = [tb.head]
    for r in tb.rows:
        c.extend(r.body)
    return tuple(c)


def _tableau_ok(dots: Monomial, head: int, rows: tuple[Row, ...]) -> bool:
    if any(d < 1 for d in dots) or any(dots[i] < dots[i + 1] for i in range(len(dots) - 1)):
        return False
    lens = [len(r.body) + 1 for r in rows]
    for i in range(len(rows) - 1):
        if lens[i] < lens[i + 1]:
            return False
        if lens[i] == lens[i + 1] and rows[i].tail < rows[i + 1].tail:
            return False
    ch = [head]
    for r in rows:
        ch.extend(r.body)
    if any(ch[i] < ch[i + 1] for i in range(len(ch) - 1)):
        return False
    mu = ch[-1]
    return all(mu >= d for d in dots)


def tableau(dots: Iterable[int], head: int, rows: Iterable[tuple]) -> Tableau:
    """Validating constructor; raises ValueError on a broken invariant."""
    tb = Tableau(tuple(sorted(dots, reverse=True)), head,
                 tuple(Row(tuple(b), t) for b, t in rows))
    if not _tableau_ok(*tb):
        raise ValueError(f"invalid tableau {tb}")
    return tb


def tableau_term(tb: Tableau) -> Term:
    """The canonical term of a tableau: dot letters (non-increasing,
    left-normed) times the left-normed circ product of the head with the
    right-normed rows."""
    w = leaf(tb.head)
    for body, tail in tb.rows:
        r = leaf(tail)
        for x in reversed(body):
            r = circ(leaf(x), r)
        w = circ(w, r)
    if tb.dots:
        w = dot(mono_term(tb.dots), w)
    return w


def as_tableau(t: Term) -> Optional[Tableau]:
    """Parse a term as a tableau (any association or order of the dot
    factors), or None if it is not one."""
    factors: list[Term] = []
    stack = [t]
    while stack:
        s = stack.pop()
        if s.op == DOT:
            stack.append(s.left)
            stack.append(s.right)
        else:
            factors.append(s)
    circpart = [f for f in factors if f.op == CIRC]
    if len(circpart) > 1:
        return None
    if circpart:
        w = circpart[0]
        dot_leaves = [f for f in factors if f.op != CIRC]
    else:
        # all leaves: the circ part is an occurrence of the largest letter
        letters = sorted((f.letter for f in factors), reverse=True)
        w = leaf(letters[0])
        dot_leaves = [leaf(x) for x in letters[1:]]
    if any(f.letter == UNIT for f in dot_leaves):
        return None
    dots = tuple(sorted((f.letter for f in dot_leaves), reverse=True))
    spine: list[Term] = []
    while w.op == CIRC:
        spine.append(w.right)
        w = w.left
    if w.op != LEAF:
        return None
    head = w.letter
    rows = []
    for a in reversed(spine):
        slots = []
        while a.op == CIRC:
            if a.left.op != LEAF:
                return None
            slots.append(a.left.letter)
            a = a.right
        if a.op != LEAF:
            return None
        rows.append(Row(tuple(slots), a.letter))
    tb = Tableau(dots, head, tuple(rows))
    return tb if _tableau_ok(*tb) else None


def _tableau_sort_key(tb: Tableau):
    rs = tuple(len(r.body) + 1 for r in tb.rows)
    neg = lambda xs: tuple(-x for x in xs)
    return (len(tb.rows), rs, neg(chain(tb)),
            neg(r.tail for r in tb.rows), neg(tb.dots))


def enumerate_tableaux(xletters: Monomial, circ_count: int) -> list[Tableau]:
    """All tableaux with the given generator multiset and total circ count
    (the sum of the row lengths).  Sorted by (row count, row lengths, then
    chain letters, tails and dots in descending letter order)."""
    xletters = tuple(sorted(xletters, reverse=True))
    out = []
    for shape in _row_shapes(circ_count):
        nslots = 1 + sum(shape)  # head, bodies and tails
        for placed in _placements(xletters, nslots):
            slots = list(placed)
            head = slots.pop(0)
            rows = []
            for r in shape:
                rows.append(Row(tuple(slots[:r - 1]), slots[r - 1]))
                slots = slots[r:]
            used = [x for x in placed if x != UNIT]
            dots = _msub(xletters, used)
            if dots is None:
                continue
            tb = Tableau(dots, head, tuple(rows))
            if _tableau_ok(*tb):
                out.append(tb)
    out.sort(key=_tableau_sort_key)
    return out


def _row_shapes(total: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing positive compositions of `total` (row length lists)."""
    if total == 0:
        yield ()
        return
    def rec(rest: int, mx: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, mx), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail
    yield from rec(total, total)


def _placements(xletters: Monomial, nslots: int) -> Iterator[tuple[int, ...]]:
    support = sorted(set(xletters) | {UNIT})
    for placed in itertools.product(support, repeat=nslots):
        yield placed


def _msub(a: Monomial, b: Iterable[int]) -> Optional[Monomial]:
    """Multiset difference a - b, or None if b is not contained in a."""
    rest = list(a)
    for x in b:
        try:
            rest.remove(x)
        except ValueError:
            return None
    return tuple(rest)


# ---------------------------------------------------------------------------
# Term generation helpers (exhaustive corpora and seeded random terms).

def enumerate_terms(letters: Iterable[int], max_leaves: int) -> Iterator[Term]:
    """All terms with at most `max_leaves` leaves drawn from `letters`.

    Levels below the top are kept; the top level is streamed, so the peak
    memory is the size of the (max_leaves - 1)-leaf level.
    """
    letters = tuple(letters)
    levels: list[list[Term]] = [[], [leaf(x) for x in letters]]
    for k in range(2, max_leaves):
        level = []
        for i in range(1, k):
            for l in levels[i]:
                for r in levels[k - i]:
                    level.append(Term(CIRC, left=l, right=r))
                    level.append(Term(DOT, left=l, right=r))
        levels.append(level)
    for k in range(1, max_leaves):
        yield from levels[k]
    if max_leaves >= 2:
        for i in range(1, max_leaves):
            for l in levels[i]:
                for r in levels[max_leaves - i]:
                    yield Term(CIRC, left=l, right=r)
                    yield Term(DOT, left=l, right=r)


def random_term(rng, letters, leaves: int) -> Term:
    """Uniform random shape/ops/letters with exactly `leaves` leaves."""
    if leaves == 1:
        return leaf(rng.choice(letters))
    k = rng.randint(1, leaves - 1)
    op = CIRC if rng.random() < 0.5 else DOT
    return Term(op, left=random_term(rng, letters, k),
                right=random_term(rng, letters, leaves - k))
