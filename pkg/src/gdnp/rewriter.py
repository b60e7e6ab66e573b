"""Direct rewriting normalizer for term trees.

Independent of the embedding normalizer: every step applies one of the
defining identities to a term (right commutativity, left symmetry, the
dot/circ compatibility, the unit law) or the closed-form expansion of
``u circ (a_1 ... a_n)``.  Left-symmetry swaps produce remainder terms of
strictly larger root number, which re-enter the pipeline; the measure
(circ count, circ count minus root) shrinks, so the recursion terminates.

The working shape is a row form: a head monomial composed (left-normed)
with rows, each row a right-normed chain of monomial slots.  The pipeline
is: split off a top circ, rebuild row forms, sort rows and the chain of
non-tail slots, expand oversized tails, squeeze remaining slots down to
single letters through the head, sort again, and emit tableaux.

With ``phi_check()`` active every elementary step asserts that the image
under the embedding is preserved exactly.
"""

from __future__ import annotations

from contextlib import contextmanager
from functools import lru_cache
from typing import NamedTuple, Optional

from .errors import BadPosition, BadShape, EmptyMonomial, NoCirc
from .terms import (CIRC, DOT, LEAF, UNIT, Coeff, E, Monomial, Row, Tableau,
                    Term, circ, deglex_key, dot, leaf, mono_mul, mono_term,
                    tableau, term_monomial)

_phi_check = False


class RowForm(NamedTuple):
    head: Monomial
    rows: tuple[tuple[Monomial, ...], ...]  # each row front..tail


def split_circ(t: Term) -> tuple[Term, Term]:
    """Write t as t1 circ t2 exactly, pulling a circ through dot factors
    with (x.y) circ z = x.(y circ z); the factor with the larger circ count
    is split (leftmost on ties)."""
    if t.circ_count == 0:
        raise NoCirc("term has no circ operation")
    if t.op == CIRC:
        return t.left, t.right
    a, b = t.left, t.right
    if a.circ_count >= b.circ_count:
        inner, arg = split_circ(a)
        out = dot(b, inner), arg
    else:
        inner, arg = split_circ(b)
        out = dot(a, inner), arg
    _assert_phi(t, [(1, circ(*out))])
    return out


def root1_expand(u: Monomial, v: Monomial) -> dict[Term, Coeff]:
    """u circ (a_1...a_n) as a combination whose circ arguments are single
    letters: sum over i of (u.a_1...^a_i...a_n) circ a_i, minus
    (n-1)(u.a_1...a_n) circ e."""
    if not v:
        raise EmptyMonomial("expansion needs a non-unit monomial")
    out: dict[Term, Coeff] = {}
    for l in sorted(set(v), reverse=True):
        t = circ(mono_term(mono_mul(u, _mremove(v, l))), leaf(l))
        out[t] = out.get(t, 0) + v.count(l)
    if len(v) > 1:
        t = circ(mono_term(mono_mul(u, v)), E)
        out[t] = out.get(t, 0) - (len(v) - 1)
    _assert_phi(circ(mono_term(u), mono_term(v)), list((c, t) for t, c in out.items()))
    return out


def _mremove(m: Monomial, letter: int) -> Monomial:
    out = list(m)
    out.remove(letter)
    return tuple(out)


# ---------------------------------------------------------------------------
# Working state of one row form and the elementary moves on it.

class _State:
    __slots__ = ("coeff", "dots", "head", "rows")

    def __init__(self, coeff, head, rows, dots=()):
        self.coeff = coeff
        self.head = head
        self.rows = [list(r) for r in rows]
        self.dots = list(dots)

    def clone(self) -> "_State":
        return _State(self.coeff, self.head, self.rows, self.dots)

    def term(self) -> Term:
        rows_ts = [_row_term([mono_term(s) for s in row]) for row in self.rows]
        return _spine(mono_term(self.head), rows_ts, self.dots)


def _row_term(slot_terms: list[Term]) -> Term:
    t = slot_terms[-1]
    for s in reversed(slot_terms[:-1]):
        t = circ(s, t)
    return t


def _spine(head_t: Term, row_ts: list[Term], dots) -> Term:
    t = head_t
    for r in row_ts:
        t = circ(t, r)
    if dots:
        t = dot(mono_term(tuple(sorted(dots, reverse=True))), t)
    return t


def _swap_adjacent(st: _State, i: int, k: int, rem: list) -> None:
    """Left-symmetry swap of the non-tail slots k, k+1 of row i; emits the
    two merged-slot remainder terms of strictly larger root."""
    row = st.rows[i]
    x, y = row[k], row[k + 1]
    if x == y:
        return
    before = st.term() if _phi_check else None

    def merged(a: Monomial, b: Monomial) -> Term:
        rows_ts = []
        for j, rr in enumerate(st.rows):
            ts = [mono_term(s) for s in rr]
            if j == i:
                ts[k:k + 2] = [circ(mono_term(a), mono_term(b))]
            rows_ts.append(_row_term(ts))
        return _spine(mono_term(st.head), rows_ts, st.dots)

    mxy, myx = merged(x, y), merged(y, x)
    rem.append((st.coeff, mxy))
    rem.append((-st.coeff, myx))
    row[k], row[k + 1] = y, x
    if before is not None:
        _assert_phi(before, [(1, st.term()), (1, mxy), (-1, myx)])


def _swap_head_front(st: _State, rem: list) -> None:
    """Left-symmetry exchange of the head with the front slot of row 1."""
    row = st.rows[0]
    x, y = st.head, row[0]
    if x == y:
        return
    before = st.term() if _phi_check else None

    def merged(a: Monomial, b: Monomial) -> Term:
        first = _row_term([mono_term(s) for s in row[1:]])
        rest = [_row_term([mono_term(s) for s in rr]) for rr in st.rows[1:]]
        return _spine(circ(mono_term(a), mono_term(b)), [first] + rest, st.dots)

    mxy, myx = merged(x, y), merged(y, x)
    rem.append((st.coeff, mxy))
    rem.append((-st.coeff, myx))
    st.head = y
    st.rows[0] = [x] + row[1:]
    if before is not None:
        _assert_phi(before, [(1, st.term()), (1, mxy), (-1, myx)])


def _swap_head_slot(st: _State, i: int, k: int, rem: list) -> None:
    """Composite exchange of the head with body slot k of row i: bring the
    row to the front and the slot to its front position, swap with the
    head, and undo the shuffling (row permutations are exact)."""
    if i:
        st.rows[0], st.rows[i] = st.rows[i], st.rows[0]
    for j in range(k, 0, -1):
        _swap_adjacent(st, 0, j - 1, rem)
    _swap_head_front(st, rem)
    for j in range(k):
        _swap_adjacent(st, 0, j, rem)
    if i:
        st.rows[0], st.rows[i] = st.rows[i], st.rows[0]


def _transpose(st: _State, p, q, rem: list) -> None:
    """Exchange the contents of two chain positions ('head' or body slots),
    routing body/body exchanges through the head."""
    if p[0] == "head":
        _swap_head_slot(st, q[1], q[2], rem)
        return
    _swap_head_slot(st, q[1], q[2], rem)
    _swap_head_slot(st, p[1], p[2], rem)
    _swap_head_slot(st, q[1], q[2], rem)


def _redistribute_head(st: _State, new_head: Monomial) -> None:
    """Move letters between the head monomial and the dots (exact, by the
    dot/circ compatibility)."""
    before = st.term() if _phi_check else None
    pool = list(st.head) + st.dots
    for x in new_head:
        pool.remove(x)
    st.head = tuple(sorted(new_head, reverse=True))
    st.dots = pool
    if before is not None:
        _assert_phi(before, [(1, st.term())])


def _sort_rows(st: _State) -> None:
    """Rows by length descending, ties by tail descending (exact)."""
    before = st.term() if _phi_check else None
    st.rows.sort(key=lambda row: (-len(row), -len(row[-1]),
                                  tuple(-x for x in row[-1])))
    if before is not None:
        _assert_phi(before, [(1, st.term())])


def _chain_positions(st: _State) -> list:
    pos = [("head",)]
    for i, row in enumerate(st.rows):
        for k in range(len(row) - 1):
            pos.append(("slot", i, k))
    return pos


def _get(st: _State, p) -> Monomial:
    return st.head if p[0] == "head" else st.rows[p[1]][p[2]]


def _chain_sort(st: _State, rem: list, with_dots: bool) -> None:
    """Selection sort of the chain (head then body slots row-major) into
    non-increasing order; with `with_dots` the dot letters join the pool
    and the leftovers stay as dots."""
    positions = _chain_positions(st)
    for idx, p in enumerate(positions):
        best_key = deglex_key(_get(st, p))
        best = None
        for j in range(idx + 1, len(positions)):
            k2 = deglex_key(_get(st, positions[j]))
            if k2 > best_key:
                best_key, best = k2, ("pos", j)
        if with_dots and st.dots:
            d = max(st.dots)
            if deglex_key((d,)) > best_key:
                best = ("dot", d)
        if best is None:
            continue
        if best[0] == "pos":
            _transpose(st, p, positions[best[1]], rem)
        else:
            d = best[1]
            if p[0] == "head":
                _redistribute_head(st, (d,))
            else:
                _swap_head_slot(st, p[1], p[2], rem)
                _redistribute_head(st, (d,))
                _swap_head_slot(st, p[1], p[2], rem)


# ---------------------------------------------------------------------------
# Row forms of a term.

@lru_cache(maxsize=200_000)
def _raw_rowforms(t: Term) -> tuple[tuple[Coeff, RowForm], ...]:
    """Exact row-form expansion (no slot ordering yet)."""
    if t.circ_count == 0:
        return ((1, RowForm(term_monomial(t), ())),)
    t1, t2 = split_circ(t)
    acc: dict[RowForm, Coeff] = {}
    for c1, p in _raw_rowforms(t1):
        for c2, q in _raw_rowforms(t2):
            for c3, rf in _combine(p, q):
                c = acc.get(rf, 0) + c1 * c2 * c3
                if c:
                    acc[rf] = c
                else:
                    del acc[rf]
    out = tuple(sorted(acc.items(), key=lambda kv: kv[0]))
    _assert_phi(t, [(c, rowform_term(rf)) for rf, c in out])
    return tuple((c, rf) for rf, c in out)


def _combine(p: RowForm, q: RowForm) -> list[tuple[Coeff, RowForm]]:
    """p circ q as row forms.  With no rows on q a length-1 row is appended;
    with one row the head of q extends that row; otherwise right
    commutativity detaches the last row of p, or left symmetry splits the
    last row of q when p is a bare monomial."""
    if not q.rows:
        return [(1, RowForm(p.head, p.rows + ((q.head,),)))]
    if len(q.rows) == 1:
        return [(1, RowForm(p.head, p.rows + ((q.head,) + q.rows[0],)))]
    if p.rows:
        inner = RowForm(p.head, p.rows[:-1])
        last = p.rows[-1]
        return [(c, RowForm(rf.head, rf.rows + (last,)))
                for c, rf in _combine(inner, q)]
    u = p.head
    y = RowForm(q.head, q.rows[:-1])
    bq = q.rows[-1]
    out = [(c, RowForm(rf.head, rf.rows + (bq,))) for c, rf in _combine(p, y)]
    out.extend(_combine(y, RowForm(u, (bq,))))
    out.extend((-c, RowForm(rf.head, rf.rows + (bq,)))
               for c, rf in _combine(y, RowForm(u, ())))
    return out


@lru_cache(maxsize=200_000)
def _sorted_rowforms(t: Term) -> tuple[tuple[Coeff, RowForm], ...]:
    """Row forms with sorted rows and a non-increasing slot chain; the swap
    remainders are themselves row-formed."""
    acc: dict[RowForm, Coeff] = {}
    work: list[tuple[Coeff, Term]] = [(1, t)]
    while work:
        c0, s = work.pop()
        for c1, rf in _raw_rowforms(s):
            st = _State(c0 * c1, rf.head, rf.rows)
            rem: list[tuple[Coeff, Term]] = []
            _sort_rows(st)
            _chain_sort(st, rem, with_dots=False)
            out_rf = RowForm(st.head, tuple(tuple(r) for r in st.rows))
            c = acc.get(out_rf, 0) + st.coeff
            if c:
                acc[out_rf] = c
            else:
                del acc[out_rf]
            work.extend(rem)
    return tuple((c, rf) for rf, c in sorted(acc.items(), key=lambda kv: kv[0]))


def rowform_term(rf: RowForm) -> Term:
    return _State(1, rf.head, rf.rows).term()


def to_row_form(t: Term) -> dict[Term, Coeff]:
    """Combination of row-form terms equal to t, rows and chain sorted."""
    return {rowform_term(rf): c for c, rf in _sorted_rowforms(t)}


def _parse_rowform(t: Term) -> Optional[tuple[Monomial, list[list[Monomial]]]]:
    rows = []
    while t.op == CIRC:
        slots = []
        a = t.right
        while a.op == CIRC and a.left.circ_count == 0:
            slots.append(term_monomial(a.left))
            a = a.right
        if a.circ_count:
            return None
        slots.append(term_monomial(a))
        rows.append(slots)
        t = t.left
    if t.circ_count:
        return None
    rows.reverse()
    return term_monomial(t), rows


# ---------------------------------------------------------------------------
# Reduction of sorted row forms to tableaux.

def _expand_tails(st: _State, branches: list) -> None:
    """Expand oversized tails (leftmost first) until every tail is a single
    letter; length-1 rows expand against the head, longer rows against
    their next-to-last slot.  Exact; branches collect the resulting states."""
    for i, row in enumerate(st.rows):
        if len(row[-1]) >= 2:
            break
    else:
        branches.append(st)
        return
    before = st.term() if _phi_check else None
    parts = []
    tail = st.rows[i][-1]
    q = len(tail)
    if len(st.rows[i]) == 1:
        st.rows.insert(0, st.rows.pop(i))
        for l in sorted(set(tail), reverse=True):
            sub = st.clone()
            sub.coeff = st.coeff * tail.count(l)
            sub.head = mono_mul(st.head, _mremove(tail, l))
            sub.rows[0] = [(l,)]
            parts.append(sub)
        sub = st.clone()
        sub.coeff = st.coeff * (1 - q)
        sub.head = mono_mul(st.head, tail)
        sub.rows[0] = [()]
        parts.append(sub)
    else:
        second = st.rows[i][-2]
        for l in sorted(set(tail), reverse=True):
            sub = st.clone()
            sub.coeff = st.coeff * tail.count(l)
            sub.rows[i][-2] = mono_mul(second, _mremove(tail, l))
            sub.rows[i][-1] = (l,)
            parts.append(sub)
        sub = st.clone()
        sub.coeff = st.coeff * (1 - q)
        sub.rows[i][-2] = mono_mul(second, tail)
        sub.rows[i][-1] = ()
        parts.append(sub)
    if before is not None:
        scale = st.coeff
        _assert_phi(before, [(_exact_div(p.coeff, scale), p.term()) for p in parts])
    for p in parts:
        _expand_tails(p, branches)


def _exact_div(a: Coeff, b: Coeff) -> Coeff:
    from fractions import Fraction
    q = Fraction(a) / Fraction(b)
    return int(q) if q.denominator == 1 else q


def _letterize(st: _State, rem: list) -> None:
    """Squeeze every slot and the head down to at most one letter: excess
    head letters become dots; an oversized body slot is routed through the
    head (composite swaps) and then split."""
    while True:
        if len(st.head) >= 2:
            before = st.term() if _phi_check else None
            st.dots.extend(st.head[1:])
            st.head = (st.head[0],)
            if before is not None:
                _assert_phi(before, [(1, st.term())])
            continue
        big = next(((i, k) for i, row in enumerate(st.rows)
                    for k in range(len(row) - 1) if len(row[k]) >= 2), None)
        if big is None:
            return
        _swap_head_slot(st, big[0], big[1], rem)


def _finish(st: _State, combo: dict, rem: list) -> None:
    """Run one sorted row form down to tableaux, collecting remainders."""
    branches: list[_State] = []
    _expand_tails(st, branches)
    for b in branches:
        _letterize(b, rem)
        _sort_rows(b)
        _chain_sort(b, rem, with_dots=True)
        tb = tableau(b.dots,
                     b.head[0] if b.head else UNIT,
                     [(tuple(s[0] if s else UNIT for s in row[:-1]),
                       row[-1][0] if row[-1] else UNIT)
                      for row in b.rows])
        c = combo.get(tb, 0) + b.coeff
        if c:
            combo[tb] = c
        else:
            del combo[tb]


def root_max(t: Term) -> dict[Tableau, Coeff]:
    """Tableau expansion of a row-shaped term whose rows all have length 1
    (head and tails may be monomials); no remainder terms arise."""
    parsed = _parse_rowform(t)
    if parsed is None:
        raise BadShape("not a row-shaped term")
    head, rows = parsed
    if any(len(r) > 1 for r in rows):
        raise BadShape("a row has length > 1")
    st = _State(1, head, rows)
    combo: dict[Tableau, Coeff] = {}
    rem: list = []
    _finish(st, combo, rem)
    assert not rem
    return combo


def _monomial_tableau(t: Term) -> Tableau:
    m = term_monomial(t)
    if not m:
        return Tableau((), UNIT, ())
    return Tableau(m[1:], m[0], ())


@lru_cache(maxsize=400_000)
def _finish_rowform(rf: RowForm):
    """Cached tableau part and remainders of one row form."""
    combo: dict[Tableau, Coeff] = {}
    rem: list[tuple[Coeff, Term]] = []
    _finish(_State(1, rf.head, rf.rows), combo, rem)
    return tuple(combo.items()), tuple(rem)


@lru_cache(maxsize=400_000)
def _norm(t: Term) -> tuple[tuple[Tableau, Coeff], ...]:
    if t.circ_count == 0:
        return ((_monomial_tableau(t), 1),)
    combo: dict[Tableau, Coeff] = {}
    rem: list[tuple[Coeff, Term]] = []
    for c, rf in _raw_rowforms(t):
        fcombo, frem = _finish_rowform(rf)
        for tb, v in fcombo:
            s = combo.get(tb, 0) + c * v
            if s:
                combo[tb] = s
            else:
                del combo[tb]
        rem.extend((c * rc, rt) for rc, rt in frem)
    for rc, rt in rem:
        for tb, v in _norm(rt):
            s = combo.get(tb, 0) + rc * v
            if s:
                combo[tb] = s
            else:
                del combo[tb]
    return tuple(sorted(combo.items(), key=lambda kv: kv[0]))


def normalize_rewrite(t: Term) -> dict[Tableau, Coeff]:
    """Tableau expansion of a term by direct rewriting; agrees with the
    embedding normalizer on every term."""
    return dict(_norm(t))


def row_interchange(t: Term, pos1, pos2) -> dict[Term, Coeff]:
    """One interchange step on a row-shaped term (dot letters allowed in
    front).  Positions: ("head",), ("slot", i, j) with row i >= 1 and slot
    index j >= 2 counting from the tail, ("dot", k) into the
    non-increasing dot list, or ("row", i) pairs for whole-row exchange.
    Returns the combination main term + remainders."""
    factors: list[Term] = []
    stack = [t]
    while stack:
        s = stack.pop()
        if s.op == DOT and s.circ_count:
            stack.append(s.left)
            stack.append(s.right)
        else:
            factors.append(s)
    circpart = [f for f in factors if f.circ_count]
    if len(circpart) != 1:
        raise BadPosition("term is not a dotted row form")
    dots: list[int] = []
    for f in factors:
        if f.circ_count:
            continue
        m = term_monomial(f)
        dots.extend(m)
    parsed = _parse_rowform(circpart[0])
    if parsed is None:
        raise BadPosition("term is not a dotted row form")
    head, rows = parsed
    st = _State(1, head, rows, dots=sorted(dots, reverse=True))
    rem: list[tuple[Coeff, Term]] = []
    a, b = sorted((tuple(pos1), tuple(pos2)))
    if a[0] == "row" and b[0] == "row":
        i, j = a[1] - 1, b[1] - 1
        if not (0 <= i < len(st.rows) and 0 <= j < len(st.rows)):
            raise BadPosition(f"no such rows {a[1]}, {b[1]}")
        st.rows[i], st.rows[j] = st.rows[j], st.rows[i]
    elif b[0] == "slot" and a[0] in ("head", "dot", "slot"):
        addrs = [x for x in (a, b) if x[0] == "slot"]
        slots = []
        for _, i, j in addrs:
            if not 1 <= i <= len(st.rows):
                raise BadPosition(f"no row {i}")
            r = len(st.rows[i - 1])
            if not 2 <= j <= r:
                raise BadPosition(f"slot index {j} outside 2..{r}")
            slots.append(("slot", i - 1, r - j))
        if a[0] == "slot":
            _transpose(st, slots[0], slots[1], rem)
        elif a[0] == "head":
            _transpose(st, ("head",), slots[0], rem)
        else:
            k = a[1]
            ds = sorted(st.dots, reverse=True)
            if not 1 <= k <= len(ds):
                raise BadPosition(f"no dot letter {k}")
            d = ds[k - 1]
            p = slots[0]
            _swap_head_slot(st, p[1], p[2], rem)
            _redistribute_head(st, (d,))
            _swap_head_slot(st, p[1], p[2], rem)
    else:
        raise BadPosition(f"unsupported position pair {pos1}, {pos2}")
    out: dict[Term, Coeff] = {st.term(): 1}
    for c, r in rem:
        s = out.get(r, 0) + c
        if s:
            out[r] = s
        else:
            del out[r]
    return out


# ---------------------------------------------------------------------------
# Debug cross-checking against the embedding.

@contextmanager
def phi_check():
    """Assert image preservation for every elementary rewriting step while
    the context is active (slow; clears the rewriter caches)."""
    global _phi_check
    clear_caches()
    _phi_check = True
    try:
        yield
    finally:
        _phi_check = False
        clear_caches()


def clear_caches() -> None:
    _raw_rowforms.cache_clear()
    _sorted_rowforms.cache_clear()
    _finish_rowform.cache_clear()
    _norm.cache_clear()


def _assert_phi(before: Term, parts) -> None:
    if not _phi_check:
        return
    from .embedding import phi
    lhs = phi(before)
    rhs: dict = {}
    for c, t in parts:
        for w, v in phi(t).items():
            s = rhs.get(w, 0) + c * v
            if s:
                rhs[w] = s
            else:
                del rhs[w]
    assert lhs == rhs, f"rewrite step changed the image of {before!r}"
