import hypothesis.strategies as st
import pytest
from hypothesis import settings

from gdnp import terms
from gdnp.shell import Session
from gdnp.terms import Alphabet

settings.register_profile("kernel", deadline=None, max_examples=120)
settings.load_profile("kernel")

A, B, C = 1, 2, 3
E = terms.E


@pytest.fixture
def session():
    return Session(gens=Alphabet(["a", "b", "c"]))


def lf(x):
    return terms.leaf(x)


def cr(l, r):
    return terms.circ(l, r)


def dt(l, r):
    return terms.dot(l, r)


def term_trees(max_leaves=6, letters=(0, 1, 2)):
    leaves = st.sampled_from([terms.leaf(x) for x in letters])

    def extend(children):
        return st.builds(lambda op, l, r: op(l, r),
                         st.sampled_from((terms.circ, terms.dot)),
                         children, children)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def monomials(max_len=3, letters=(1, 2, 3)):
    return st.lists(st.sampled_from(letters), max_size=max_len).map(terms.monomial)
