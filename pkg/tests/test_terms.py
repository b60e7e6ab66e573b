import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import A, B, C, E, cr, dt, lf, monomials, term_trees
from gdnp import terms
from gdnp.terms import (Row, Tableau, as_tableau, counts, deglex_compare,
                        enumerate_tableaux, monomial, root, tableau,
                        tableau_term)


class TestCounts:
    def test_mixed_word(self):
        # (a.a)(a.e) with both products
        t = dt(cr(lf(A), lf(A)), cr(lf(A), E))
        assert counts(t) == (2, 3, 1)

    def test_unit_leaf(self):
        assert counts(E) == (0, 0, 1)

    def test_unit_heavy_word(self):
        t = dt(dt(cr(cr(dt(E, E), lf(A)), cr(lf(A), cr(lf(B), E))), E), E)
        assert counts(t) == (3, 3, 5)


class TestRoot:
    def test_left_normed_rows(self):
        import random
        rng = random.Random(5)
        for n in range(1, 7):
            slots = [terms.mono_term(monomial(rng.choices((A, B), k=rng.randint(0, 2))))
                     for _ in range(n)]
            t = slots[0]
            for s in slots[1:]:
                t = cr(t, s)
            assert root(t) == n - 1

    def test_right_normed(self):
        assert root(cr(lf(A), cr(lf(B), lf(C)))) == 1

    def test_dot_of_leaves(self):
        assert root(dt(lf(A), lf(B))) == 0

    @given(term_trees(), term_trees(), term_trees())
    def test_swap_identities(self, x, y, z):
        assert root(cr(cr(x, y), z)) == root(cr(cr(x, z), y))
        assert root(cr(dt(x, y), z)) == root(dt(x, cr(y, z)))

    @given(term_trees(), term_trees(), term_trees())
    def test_monotone(self, t1, t2, t):
        if root(t1) > root(t2):
            assert root(cr(t1, t)) > root(cr(t2, t))
            if root(t1) > 1:
                assert root(cr(t, t1)) > root(cr(t, t2))
            elif root(t1) == 1:
                assert root(cr(t, t1)) == root(cr(t, t2))

    @given(term_trees(max_leaves=7))
    def test_bounded_by_circ(self, t):
        assert root(t) <= t.circ_count


class TestDeglex:
    def test_longer_wins(self):
        assert deglex_compare(monomial([A, B]), monomial([C])) > 0

    def test_position_compare(self):
        assert deglex_compare(monomial([C, A]), monomial([C, B])) < 0

    def test_unit_smallest(self):
        assert deglex_compare(monomial([]), monomial([A])) < 0

    @given(monomials(), monomials(), monomials())
    def test_total_order(self, u, v, w):
        cuv, cvw, cuw = deglex_compare(u, v), deglex_compare(v, w), deglex_compare(u, w)
        assert (cuv == 0) == (u == v)
        assert cuv == -deglex_compare(v, u)
        if cuv <= 0 and cvw <= 0:
            assert cuw <= 0

    @given(monomials(), monomials(), monomials())
    def test_multiplication_compatible(self, u, v, w):
        if deglex_compare(u, v) < 0:
            assert deglex_compare(terms.mono_mul(u, w), terms.mono_mul(v, w)) < 0


class TestAsTableau:
    def test_two_rows(self):
        t = cr(cr(lf(A), lf(C)), lf(B))
        assert as_tableau(t) == Tableau((), A, (Row((), C), Row((), B)))

    def test_tail_tie_violation(self):
        assert as_tableau(cr(cr(lf(A), lf(B)), lf(C))) is None

    def test_dotted(self):
        t = dt(lf(A), cr(lf(A), E))
        assert as_tableau(t) == Tableau((A,), A, (Row((), 0),))

    def test_unit_dot_rejected(self):
        assert as_tableau(dt(lf(A), E)) is None

    def test_monomial_head_choice(self):
        # the largest letter must head the dot factors
        assert as_tableau(dt(lf(A), lf(B))) == Tableau((A,), B, ())
        assert as_tableau(dt(lf(B), lf(A))) == Tableau((A,), B, ())


class TestTableauTerm:
    def test_two_rows(self):
        tb = tableau((), A, [((), C), ((), B)])
        assert tableau_term(tb) == cr(cr(lf(A), lf(C)), lf(B))

    def test_dotted(self):
        tb = tableau((A,), A, [((), 0)])
        assert tableau_term(tb) == dt(lf(A), cr(lf(A), E))

    def test_unit(self):
        assert tableau_term(tableau((), 0, [])) == E

    def test_roundtrip_on_enumerated(self):
        for xl, circ in [((A, A), 1), ((A, B), 2), ((A,), 3), ((), 2)]:
            for tb in enumerate_tableaux(monomial(xl), circ):
                assert as_tableau(tableau_term(tb)) == tb


class TestEnumerateTableaux:
    def test_two_a_one_circ(self):
        got = enumerate_tableaux(monomial([A, A]), 1)
        assert got == [Tableau((), A, (Row((), A),)),
                       Tableau((A,), A, (Row((), 0),))]

    def test_single_letter(self):
        assert enumerate_tableaux(monomial([A]), 0) == [Tableau((), A, ())]

    def test_one_a_one_circ(self):
        got = enumerate_tableaux(monomial([A]), 1)
        assert got == [Tableau((), A, (Row((), 0),)),
                       Tableau((), 0, (Row((), A),))]

    def test_invariants_hold(self):
        for tb in enumerate_tableaux(monomial([A, B, B]), 2):
            # validating constructor must accept every enumerated tableau
            assert tableau(tb.dots, tb.head, tb.rows) == tb

    def test_grade(self):
        for tb in enumerate_tableaux(monomial([A, B]), 2):
            t = tableau_term(tb)
            assert t.circ_count == 2
            assert terms.term_monomial(t) is None or t.circ_count == 0

    def test_validator_rejects(self):
        with pytest.raises(ValueError):
            tableau((), A, [((), B), ((), C)])  # tails increase on a tie
        with pytest.raises(ValueError):
            tableau((A,), 0, [])  # unit head cannot carry dots
