from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings, strategies as st
import pytest

from uplogic.covers import (
    CoverError, MultisetCover, SetFunction, check_property, covers_n_times, decompose,
    dump_set_function, enumerate_covers, find_up3_violation, is_exact_nk_cover, is_nk_cover,
    load_cover_query, load_set_function, make_upsilon_epsilon, property_counterexample, prop22_envelope,
    up3_holds,
)
from uplogic.structures import envelope

from strategies import measures

F = Fraction
G3 = ("1", "2", "3")


def cover(*members, ground=G3):
    return MultisetCover(ground, [frozenset(m) for m in members])


TWO_TWO = cover("12", "23", "13", "2", "2")


def test_covers_n_times():
    assert covers_n_times(cover("12", "23", "13"), G3, 2)
    assert covers_n_times(cover(), [], 5)
    assert not covers_n_times(cover("12"), G3, 1)


def test_nk_cover_examples():
    assert is_nk_cover(TWO_TWO, "2", 2, 2)
    assert is_nk_cover(cover("123", ""), G3, 0, 1)
    assert is_nk_cover(cover("12"), "1", 1, 0)
    assert not is_nk_cover(TWO_TWO, "2", 3, 2)


def test_exact_examples():
    assert is_exact_nk_cover(cover("1", "2", ground=("1", "2")), "12", 1, 0)
    assert is_exact_nk_cover(cover("123"), "", 0, 1)
    assert is_exact_nk_cover(TWO_TWO, "2", 2, 2)
    assert not is_exact_nk_cover(cover("12", "123"), "", 0, 1)


def test_target_outside_ground():
    with pytest.raises(CoverError):
        is_nk_cover(TWO_TWO, "4", 0, 0)
    with pytest.raises(CoverError):
        cover("14")


def test_decompose_two_two():
    split = decompose(TWO_TWO, "2", 2, 2)
    assert split is not None
    n1, k1 = split.first_nk
    n2, k2 = split.second_nk
    assert (n1 + n2, k1 + k2) == (2, 2)
    assert is_exact_nk_cover(split.first, "2", n1, k1)
    assert is_exact_nk_cover(split.second, "2", n2, k2)
    assert sorted(map(sorted, split.first.members + split.second.members)) == sorted(map(sorted, TWO_TWO.members))


def test_decompose_doubled_omega():
    split = decompose(cover("123", "123"), "", 0, 2)
    assert split.first.members == (frozenset(G3),) and split.second.members == (frozenset(G3),)


def test_indecomposable():
    # three pairs cover each point twice but no proper part is exact
    assert decompose(cover("12", "23", "13"), "", 0, 2) is None


def test_decompose_requires_exact():
    with pytest.raises(CoverError):
        decompose(cover("12", "123"), "", 0, 1)


def test_up3_trivial_cover_forces_empty_zero():
    v = prop22_envelope()
    omega = frozenset("abcd")
    C = MultisetCover(v.ground, [omega, frozenset()])
    assert up3_holds(v, omega, C, 0, 1)
    values = dict(v.values)
    values[omega] = F(1, 2)
    assert not up3_holds(SetFunction(v.ground, values), omega, C, 0, 1)


def test_up3_needs_cover():
    with pytest.raises(CoverError):
        up3_holds(prop22_envelope(), "a", MultisetCover("abcd", [frozenset("b")]), 1, 0)


def test_upsilon_epsilon_values():
    v = make_upsilon_epsilon(F(1, 16))
    assert v(frozenset("abc")) == F(3, 4) + F(1, 16)
    assert v(frozenset("ab")) == F(1, 2)
    assert v(frozenset()) == 0 and v(frozenset("abcd")) == 1
    for eps in (0, F(1, 8), F(-1, 16)):
        with pytest.raises(CoverError):
            make_upsilon_epsilon(eps)


def test_upsilon_epsilon_fails_pair_cover():
    v = make_upsilon_epsilon(F(1, 16))
    C = MultisetCover(v.ground, [frozenset("ab"), frozenset("bc"), frozenset("ac")])
    assert is_nk_cover(C, "abc", 2, 0)
    assert not up3_holds(v, "abc", C, 2, 0)
    found = find_up3_violation(v, max_members=3)
    assert found is not None
    assert not up3_holds(v, found.target, found.cover, found.n, found.k)


def test_property_six_on_upsilon():
    v = make_upsilon_epsilon(F(1, 16))
    assert property_counterexample(6, v) is None


def test_check_property_arity_and_disjointness():
    v = prop22_envelope()
    low = v.dual()
    with pytest.raises(CoverError):
        check_property(3, v, low, "a")
    with pytest.raises(CoverError):
        check_property(6, v, low, "ab", "bc")
    with pytest.raises(CoverError):
        check_property(11, v, low, "a", "b")
    with pytest.raises(CoverError):
        check_property(1, v, low)
    assert check_property(1, v, low, "ab")


def test_check_property_by_hand():
    # upper a 1/2, b 1/2; lower a 1/4, b 1/4; ab 1 and 3/4
    v = SetFunction("ab", {"": 0, "a": F(1, 2), "b": F(1, 2), "ab": 1})
    low = SetFunction("ab", {"": 0, "a": F(1, 4), "b": F(1, 4), "ab": 1})
    # (6): 1/2 + 1/4 <= 1 <= 1/2 + 1/2
    assert check_property(6, v, low, "a", "b")
    bad = SetFunction("ab", {"": 0, "a": F(1, 4), "b": F(1, 4), "ab": 1})
    assert not check_property(6, bad, low, "a", "b")


def test_enumerate_covers_counts():
    # multisets of size <= 2 drawn from 4 subsets of a 2-element ground
    assert sum(1 for _ in enumerate_covers("ab", 2)) == 1 + 4 + 10


def test_set_function_text_round_trip():
    v = make_upsilon_epsilon(F(1, 10))
    assert load_set_function(dump_set_function(v)) == v


@pytest.mark.parametrize("text", [
    "",
    "[a] -> 1",
    "ground: a\n[] -> 0\n",
    "ground: a\n[] -> 0\n[a] -> 1\n[a] -> 1\n",
    "ground: a\n[] -> 0\n[b] -> 1\n",
    "ground: a\n[] -> 0\n[a] -> x\n",
    "ground: a a\n",
])
def test_set_function_text_errors(text):
    with pytest.raises(CoverError):
        load_set_function(text)


def test_cover_query():
    text = "ground: [1, 2, 3]\ntarget: [2]\nn: 2\nk: 2\nmembers: [[1, 2], [2, 3], [1, 3], [2], [2]]\n"
    q = load_cover_query(text)
    assert q.cover == TWO_TWO and q.target == {"2"} and (q.n, q.k) == (2, 2)
    with pytest.raises(CoverError):
        load_cover_query(text + "setfunction: v.sf\n")
    with pytest.raises(CoverError):
        load_cover_query("ground: [1]\ntarget: [1]\nn: -1\nk: 0\nmembers: []\n")


subset3 = st.sets(st.sampled_from(G3)).map(frozenset)


@given(st.lists(subset3, max_size=5), subset3, st.integers(0, 3), st.integers(0, 3), subset3)
def test_cover_weakening_and_exactness(members, A, n, k, extra):
    C = MultisetCover(G3, members)
    if is_nk_cover(C, A, n, k):
        assert is_nk_cover(MultisetCover(G3, members + [extra]), A, n, k)
    if is_exact_nk_cover(C, A, n, k):
        assert is_nk_cover(C, A, n, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(measures(n), min_size=1, max_size=6))))
def test_envelopes_pass_every_property(case):
    n, mus = case
    v = envelope(mus, "abcd"[:n])
    for i in range(1, 11):
        assert property_counterexample(i, v) is None, i


def brute_union_bound(v, low, sets):
    # inclusion-exclusion with upper on odd and lower on even layers
    total = 0
    for size in range(1, len(sets) + 1):
        for group in combinations(sets, size):
            inter = frozenset.intersection(*group)
            total += (1 if size % 2 else -1) * (v(inter) if size % 2 else low(inter))
    return v(frozenset.union(*sets)) <= total


@settings(max_examples=30, deadline=None)
@given(st.lists(measures(3), min_size=1, max_size=4), st.lists(st.sets(st.sampled_from("abc")).map(frozenset), min_size=1, max_size=3))
def test_property_one_against_direct_evaluation(mus, sets):
    v = envelope(mus, "abc")
    low = v.dual()
    assert check_property(1, v, low, *sets) == brute_union_bound(v, low, sets)
