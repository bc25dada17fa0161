"""Hypothesis strategies for formulas, structures and linear systems."""

from fractions import Fraction

from hypothesis import strategies as st

from uplogic.lang import BasicL, LAnd, LNot, LOr, Term
from uplogic.prop import FALSE, TRUE, And, Iff, Implies, Not, Or, Prim
from uplogic.structures import Measure, UPStructure

LETTERS = ("p", "q", "r", "s")


def prop_formulas(letters=LETTERS, max_leaves=8):
    leaf = st.one_of(st.sampled_from([Prim(x) for x in letters]), st.sampled_from([TRUE, FALSE]))
    binary = st.sampled_from([And, Or, Implies, Iff])
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(lambda op, a, b: op(a, b), binary, sub, sub),
        ),
        max_leaves=max_leaves,
    )


rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 8))


def basic_formulas(letters=LETTERS):
    addend = st.tuples(rationals.filter(bool), prop_formulas(letters, max_leaves=4))
    return st.builds(
        lambda adds, rel, bound: BasicL(Term(tuple(adds)), rel, bound),
        st.lists(addend, min_size=1, max_size=3),
        st.sampled_from([">=", ">"]),
        rationals,
    )


def likelihood_formulas(letters=LETTERS, max_leaves=4):
    return st.recursive(
        basic_formulas(letters),
        lambda sub: st.one_of(
            st.builds(LNot, sub), st.builds(LAnd, sub, sub), st.builds(LOr, sub, sub)
        ),
        max_leaves=max_leaves,
    )


@st.composite
def measures(draw, n):
    weights = draw(st.lists(st.integers(0, 6), min_size=n, max_size=n).filter(any))
    total = sum(weights)
    return Measure(tuple(Fraction(w, total) for w in weights))


@st.composite
def structures(draw, letters=LETTERS, max_states=5, max_measures=6):
    n = draw(st.integers(1, max_states))
    states = tuple(f"w{i}" for i in range(n))
    valuation = {
        s: frozenset(draw(st.sets(st.sampled_from(letters)))) for s in states
    }
    mus = draw(st.lists(measures(n), min_size=1, max_size=max_measures))
    return UPStructure(states, valuation, tuple(mus))
