import random

import pytest

from conftest import A, B, C
from gdnp import admissible as adm
from gdnp.admissible import (CWord, compare_ord, cword, derive, dot, leading,
                             letter_word, poly_add, poly_derive, poly_mul,
                             poly_scale, poly_word, star, weight)
from gdnp.errors import InvalidWord, ZeroPolynomial

E = 0
GENS = (A, B)


def w(*factors, star=1):
    return cword(factors, star)


class TestCword:
    def test_sorts(self):
        assert w((0, A), (1, B), star=2) == CWord(((1, B), (0, A)), 2)

    def test_trailing_unit_rejected(self):
        with pytest.raises(InvalidWord):
            cword([(0, A), (0, E)], 1)

    def test_all_star_trailing_unit_ok(self):
        assert cword([(0, A), (0, E)], 2) == CWord(((0, A), (0, E)), 2)

    def test_star_range(self):
        with pytest.raises(InvalidWord):
            cword([(0, A)], 2)
        with pytest.raises(InvalidWord):
            cword([(0, A)], 0)


class TestOrder:
    def test_degree_beats(self):
        assert compare_ord(w((0, A)), w((1, A))) < 0

    def test_star_count_dominates(self):
        assert compare_ord(w((1, A)), w((0, A), (0, B), star=2)) < 0

    def test_prefix_shorter_smaller(self):
        assert compare_ord(w((1, A)), w((1, A), (0, B))) < 0

    def test_total(self):
        rng = random.Random(11)
        for _ in range(300):
            w1 = adm.random_cword(rng, GENS, 3, 2)
            w2 = adm.random_cword(rng, GENS, 3, 2)
            w3 = adm.random_cword(rng, GENS, 3, 2)
            assert compare_ord(w1, w2) == -compare_ord(w2, w1)
            assert (compare_ord(w1, w2) == 0) == (w1 == w2)
            if compare_ord(w1, w2) <= 0 and compare_ord(w2, w3) <= 0:
                assert compare_ord(w1, w3) <= 0


class TestWeight:
    def test_unit(self):
        assert weight(adm.E_WORD) == 0

    def test_balanced(self):
        assert weight(w((1, A), (0, B), star=2)) == 0

    def test_star_with_unit(self):
        assert weight(w((0, A), (0, E), star=2)) == -1


class TestProducts:
    def test_dot_simple(self):
        assert dot(w((1, A)), w((0, B))) == CWord(((1, A), (0, B)), 1)

    def test_dot_unit(self):
        rng = random.Random(3)
        for _ in range(50):
            u = adm.random_cword(rng, GENS, 3, 2)
            assert dot(u, adm.E_WORD) == u
            assert dot(adm.E_WORD, u) == u

    def test_dot_global_sort(self):
        # (a & Db) . c keeps two star factors and sorts everything
        u = cword([(0, A), (1, B)], 2)
        assert dot(u, w((0, C))) == CWord(((1, B), (0, C), (0, A)), 2)

    def test_star_simple(self):
        assert star(w((0, A)), w((0, B))) == CWord(((0, B), (0, A)), 2)

    def test_star_keeps_unit_inside_block(self):
        assert star(w((0, A)), adm.E_WORD) == CWord(((0, A), (0, E)), 2)

    def test_star_after_dot(self):
        u = dot(w((1, A)), w((0, B)))
        assert star(u, w((0, C))) == CWord(((1, A), (0, C), (0, B)), 2)

    def test_trimming(self):
        ae = cword([(0, A), (0, E)], 2)
        assert dot(ae, w((0, B))) == CWord(((0, B), (0, A)), 2)


class TestDerive:
    def test_letter(self):
        assert derive(w((0, A))) == {w((1, A)): 1}

    def test_dot_word(self):
        got = derive(dot(w((0, A)), w((0, B))))
        assert got == {CWord(((1, B), (0, A)), 1): 1,
                       CWord(((1, A), (0, B)), 1): 1,
                       CWord(((1, E), (0, B), (0, A)), 1): -1}

    def test_star_word(self):
        got = derive(w((0, B), (0, A), star=2))
        assert got == {CWord(((1, B), (0, A)), 2): 1,
                       CWord(((1, A), (0, B)), 2): 1}

    def test_never_zero(self):
        rng = random.Random(9)
        for _ in range(200):
            assert derive(adm.random_cword(rng, GENS, 4, 3))


class TestPolyOps:
    def test_add_cancels(self):
        p = poly_word(w((1, A)))
        assert poly_add(p, poly_scale(-1, p)) == {}

    def test_scale_zero(self):
        assert poly_scale(0, poly_word(w((1, A)))) == {}

    def test_add_disjoint(self):
        got = poly_add(poly_word(w((1, A))), poly_word(w((1, B))))
        assert got == {w((1, A)): 1, w((1, B)): 1}

    def test_mul_unit(self):
        p = poly_add(poly_word(w((0, A))), poly_word(w((0, B))))
        assert poly_mul("dot", p, poly_word(adm.E_WORD)) == p

    def test_derive_unit_nonzero(self):
        assert poly_derive(poly_word(adm.E_WORD)) == {w((1, E)): 1}

    def test_mul_bilinear(self):
        q = poly_add(poly_word(w((0, B))), poly_word(w((0, C))))
        got = poly_mul("star", poly_word(w((0, A))), q)
        assert got == {star(w((0, A)), w((0, B))): 1,
                       star(w((0, A)), w((0, C))): 1}


class TestLeading:
    def test_derive_leading_closed_form(self):
        u = cword([(1, A), (0, B)], 2)
        lw, lc = leading(poly_derive(poly_word(u)))
        assert (lw, lc) == (cword([(2, A), (0, B)], 2), 1)

    def test_single(self):
        assert leading(poly_word(w((0, A)))) == (w((0, A)), 1)

    def test_star_count_dominates(self):
        p = {cword([(0, A), (0, B)], 2): 2, w((1, A)): 3}
        assert leading(p) == (cword([(0, A), (0, B)], 2), 2)

    def test_zero_raises(self):
        with pytest.raises(ZeroPolynomial):
            leading({})


class TestAxioms:
    """Defining identities of the admissible model, on seeded random data."""

    def triples(self, n=150, seed=23):
        rng = random.Random(seed)
        for _ in range(n):
            yield (adm.random_cpoly(rng, GENS, 4, 3) for _ in range(3))

    def test_identities(self):
        de = poly_word(adm.DE_WORD)
        unit = poly_word(adm.E_WORD)
        for x, y, z in self.triples():
            assert poly_mul("dot", x, y) == poly_mul("dot", y, x)
            assert poly_mul("dot", poly_mul("dot", x, y), z) == \
                poly_mul("dot", x, poly_mul("dot", y, z))
            assert poly_mul("dot", x, unit) == x
            assert poly_mul("star", x, y) == poly_mul("star", y, x)
            assert poly_mul("star", poly_mul("star", x, y), z) == \
                poly_mul("star", x, poly_mul("star", y, z))
            assert poly_mul("star", poly_mul("dot", x, y), z) == \
                poly_mul("dot", x, poly_mul("star", y, z))
            assert poly_derive(poly_mul("star", x, y)) == poly_add(
                poly_mul("star", poly_derive(x), y),
                poly_mul("star", x, poly_derive(y)))
            lhs = poly_derive(poly_mul("dot", x, y))
            rhs = poly_add(poly_mul("dot", poly_derive(x), y),
                           poly_mul("dot", x, poly_derive(y)))
            rhs = poly_add(rhs, poly_scale(-1, poly_mul("dot", poly_mul("dot", x, y), de)))
            assert lhs == rhs

    def test_order_monotone(self):
        rng = random.Random(31)
        for _ in range(400):
            w1 = adm.random_cword(rng, GENS, 4, 3)
            w2 = adm.random_cword(rng, GENS, 4, 3)
            w3 = adm.random_cword(rng, GENS, 4, 3)
            c = compare_ord(w1, w2)
            if c == 0:
                continue
            lo, hi = (w1, w2) if c < 0 else (w2, w1)
            assert compare_ord(star(lo, w3), star(hi, w3)) < 0
            assert compare_ord(dot(lo, w3), dot(hi, w3)) < 0

    def test_weight_grading(self):
        rng = random.Random(37)
        for _ in range(300):
            w1 = adm.random_cword(rng, GENS, 4, 3)
            w2 = adm.random_cword(rng, GENS, 4, 3)
            assert weight(dot(w1, w2)) == weight(w1) + weight(w2)
            assert weight(star(w1, w2)) == weight(w1) + weight(w2) - 1
            assert all(weight(u) == weight(w1) + 1 for u in derive(w1))
