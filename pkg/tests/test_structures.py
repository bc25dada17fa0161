from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from uplogic.covers import find_up3_violation, prop22_envelope
from uplogic.lang import BasicL, Term, parse
from uplogic.prop import TRUE, Not, Prim
from uplogic.structures import (
    Measure, StructureError, UPStructure, dump_structure, envelope, extension, load_structure, lower,
    lower_set, marble_structure, satisfies, upper, upper_f,
)

from strategies import prop_formulas, structures

F = Fraction
MARBLE = marble_structure()


def test_measure_validation():
    with pytest.raises(StructureError):
        Measure((F(1, 2), F(1, 3)))
    with pytest.raises(StructureError):
        Measure((F(3, 2), F(-1, 2)))


def test_structure_validation():
    with pytest.raises(StructureError):
        UPStructure(("a", "b"), {}, (Measure((1,)),))
    with pytest.raises(StructureError):
        UPStructure(("a",), {}, ())


def test_marble_extension():
    assert extension(MARBLE, Prim("red")) == {"s_r"}
    assert extension(MARBLE, TRUE) == set(MARBLE.states)


def test_marble_values():
    # direct max / min over the three listed measures
    blue = [mu.masses[1] for mu in MARBLE.measures]
    assert upper_f(MARBLE, Prim("blue")) == max(blue) == F(7, 10)
    assert lower(MARBLE, Prim("blue")) == min(blue) == 0
    assert upper_f(MARBLE, Prim("red")) == F(3, 10)
    assert lower(MARBLE, TRUE) == 1
    assert upper(MARBLE, []) == 0


def test_marble_satisfies():
    assert satisfies(MARBLE, parse("l(blue) = 7/10 & l(red) = 3/10"))
    assert not satisfies(MARBLE, parse("l(blue) > 7/10"))


def test_prop22_table_value():
    assert prop22_envelope()(frozenset("abc")) == F(3, 4)


def test_load_dump_round_trip():
    text = dump_structure(MARBLE, ["red", "blue", "yellow"])
    assert load_structure(text) == MARBLE


def test_load_errors():
    with pytest.raises(StructureError):
        load_structure("states: [a]\nmeasures:\n  - [1/2]\n")
    with pytest.raises(StructureError):
        load_structure("states: [a]\nvaluation:\n  b: {p: true}\nmeasures:\n  - [1]\n")
    with pytest.raises(StructureError):
        load_structure("states: [a\n")
    with pytest.raises(StructureError):
        load_structure("states: [a]\nmeasures:\n  - [x]\n")


@given(structures(), prop_formulas())
def test_extension_complement(M, phi):
    assert extension(M, Not(phi)) == set(M.states) - extension(M, phi)


@given(structures(), prop_formulas())
def test_duality_and_bounds(M, phi):
    ext = extension(M, phi)
    ids = [i for i, s in enumerate(M.states) if s in ext]
    assert lower(M, phi) == min(mu.of(ids) for mu in M.measures)
    assert lower(M, phi) <= upper_f(M, phi)
    assert lower_set(M, ext) == lower(M, phi)


@given(structures(), prop_formulas(), st.builds(Fraction, st.integers(0, 8), st.integers(1, 8)))
def test_lower_bound_formula(M, phi, beta):
    # -l(~phi) >= beta - 1 expresses a lower bound of beta on phi
    f = BasicL(Term.of((-1, Not(phi))), ">=", beta - 1)
    assert satisfies(M, f) == (lower(M, phi) >= beta)


@given(structures())
def test_up1_up2_and_monotone(M):
    omega = frozenset(M.states)
    assert upper(M, []) == 0 and upper(M, omega) == 1
    v = envelope(M.measures, M.states)
    for A in v.values:
        for B in v.values:
            if A <= B:
                assert v(A) <= v(B)
    assert satisfies(M, parse("l(true) >= 1"))


@settings(max_examples=15, deadline=None)
@given(structures(max_states=5, max_measures=6))
def test_envelopes_satisfy_up3(M):
    v = envelope(M.measures, M.states)
    assert find_up3_violation(v, max_members=3, max_nk=3) is None
