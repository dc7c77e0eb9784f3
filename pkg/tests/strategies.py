from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from blocktype import AutParams, Element

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
nonzero_rationals = st.builds(Fraction, st.integers(1, 9), st.integers(1, 6)).flatmap(
    lambda x: st.sampled_from([x, -x]))
qs = st.integers(1, 4)


def indices(A=4, I=4):
    return st.tuples(st.integers(-A, A), st.integers(0, I))


def elements(A=4, I=4, max_terms=4, with_central=False):
    terms = st.dictionaries(indices(A, I), rationals, max_size=max_terms)
    cen = rationals if with_central else st.just(Fraction(0))
    return st.builds(Element, terms, cen)


def nonzero_elements(A=4, I=4, max_terms=4):
    return elements(A, I, max_terms).filter(lambda x: len(x) > 0)


aut_params = st.builds(AutParams, st.sampled_from([1, -1]), nonzero_rationals,
                       nonzero_rationals)
