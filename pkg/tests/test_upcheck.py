from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from uplogic import fourier_motzkin
from uplogic.covers import SetFunction, all_subsets, make_upsilon_epsilon, prop22_envelope
from uplogic.structures import envelope
from uplogic.upcheck import (
    REASON_LP, REASON_UP2, ResourceLimitError, check_upf, dominated_measure_system, is_upper_probability,
    witness_envelope,
)

from strategies import measures

F = Fraction


def dirac(ground, s0):
    return SetFunction(ground, {X: F(int(s0 in X)) for X in all_subsets(ground)})


def test_prop22_envelope_is_upper():
    v = prop22_envelope()
    verdict = is_upper_probability(v)
    assert verdict
    assert witness_envelope(verdict, v.ground) == v


@pytest.mark.parametrize("eps", [F(1, 16), F(1, 10), F(1, 100)])
def test_upsilon_epsilon_rejected_at_abc(eps):
    v = make_upsilon_epsilon(eps)
    verdict = is_upper_probability(v)
    assert not verdict
    assert verdict.witness_set == frozenset("abc")
    assert verdict.reason == REASON_LP
    # the independent eliminator agrees that no dominated measure touches v there
    assert not fourier_motzkin.is_feasible(dominated_measure_system(v, frozenset("abc")))


def test_only_abc_fails():
    verdict = is_upper_probability(make_upsilon_epsilon(F(1, 16)), stop_early=False)
    assert verdict.failing_sets == (frozenset("abc"),)


def test_dirac():
    v = dirac("xyz", "y")
    verdict = is_upper_probability(v)
    assert verdict
    assert set(verdict.witnesses.values()) == {verdict.witnesses[frozenset("y")]}
    assert verdict.witnesses[frozenset("y")].masses == (0, 1, 0)


def test_up2_failure():
    values = dict(prop22_envelope().values)
    values[frozenset("abcd")] = F(9, 10)
    v = SetFunction("abcd", values)
    verdict = is_upper_probability(v)
    assert not verdict and verdict.reason == REASON_UP2
    assert not check_upf(v, 3)


def test_ground_cap():
    with pytest.raises(ResourceLimitError):
        is_upper_probability(dirac("abcdef", "a"), max_ground=5)
    with pytest.raises(ResourceLimitError):
        check_upf(dirac("abcdef", "a"), 2)


def test_check_upf():
    assert check_upf(prop22_envelope(), 3)
    assert not check_upf(make_upsilon_epsilon(F(1, 16)), 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(measures(n), min_size=1, max_size=5)))
def test_envelopes_accepted_with_exact_reconstruction(mus):
    ground = "abcd"[: len(mus[0].masses)]
    v = envelope(mus, ground)
    verdict = is_upper_probability(v)
    assert verdict
    assert witness_envelope(verdict, ground) == v


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 3).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(measures(n), min_size=1, max_size=3),
            st.dictionaries(st.integers(1, 2**n - 2), st.integers(-2, 2), max_size=2),
        )
    )
)
def test_no_verdicts_are_confirmed_by_oracle(case):
    n, mus, bumps = case
    ground = "abc"[:n]
    base = envelope(mus, ground)
    subsets = all_subsets(ground)
    values = dict(base.values)
    for mask, delta in bumps.items():
        values[subsets[mask]] = min(F(1), max(F(0), values[subsets[mask]] + F(delta, 8)))
    v = SetFunction(ground, values)
    verdict = is_upper_probability(v, stop_early=False)
    if verdict:
        assert witness_envelope(verdict, ground) == v
    else:
        for X in verdict.failing_sets:
            assert not fourier_motzkin.is_feasible(dominated_measure_system(v, X))
    # a cover violation found with m, n, k <= 3 always means No
    if not check_upf(v, 3):
        assert not verdict
