from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from uplogic import fourier_motzkin
from uplogic.ratlp import (
    EQ, GE, GT, DimensionError, LinConstraint, LinSystem, small_support_solution, solve_feasibility,
    system,
)

F = Fraction


def test_forced_point():
    out = solve_feasibility(system(1, [([1], GE, 1), ([-1], GE, -1)]))
    assert out.feasible and out.witness == (F(1),)


def test_contradiction():
    assert not solve_feasibility(system(1, [([1], GE, 1), ([-1], GE, 0)]))


def test_open_interval_slack():
    sys = system(1, [([1], GT, 0), ([-1], GT, -1)])
    out = solve_feasibility(sys)
    # maximizing t in x >= t, -x >= -1 + t gives t* = 1/2 at x = 1/2
    assert out.witness == (F(1, 2),)
    assert out.slack == F(1, 2)


def test_strict_infeasible_boundary():
    # x > 0 and x <= 0 touch only at 0
    assert not solve_feasibility(system(1, [([1], GT, 0), ([-1], GE, 0)]))


def test_free_variables_may_go_negative():
    out = solve_feasibility(system(2, [([1, 1], EQ, -3), ([1, -1], EQ, 1)]))
    assert out.witness == (F(-1), F(-2))


def test_empty_system():
    assert solve_feasibility(LinSystem(3)).witness == (0, 0, 0)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        LinSystem(2, (LinConstraint((1,), GE, 0),))


def test_unknown_relation():
    with pytest.raises(ValueError):
        LinConstraint((1,), "<", 0)


def test_small_support_segment():
    out = small_support_solution(system(2, [([1, 1], EQ, 1)], nonneg=True))
    assert sorted(out.witness) == [0, 1]


def test_small_support_vertex():
    out = small_support_solution(system(2, [([1, 1], GE, 1), ([1, -1], GE, 0)], nonneg=True))
    assert out.witness in ((F(1), F(0)), (F(1, 2), F(1, 2)))


def test_small_support_infeasible():
    assert not small_support_solution(system(1, [([1], GE, 2), ([-1], GE, -1)], nonneg=True))


def test_small_support_needs_nonneg():
    with pytest.raises(ValueError):
        small_support_solution(system(1, [([1], GE, 0)]))


def test_small_support_strict_rows_stay_strict():
    sys = system(3, [([1, 1, 1], EQ, 1), ([1, 0, 0], GT, F(1, 3)), ([0, 1, 0], GT, 0)], nonneg=True)
    out = small_support_solution(sys)
    assert sys.holds(out.witness)
    assert sum(1 for v in out.witness if v) <= 3


def test_degenerate_cycling_candidate():
    # Beale's example; Bland's rule must terminate
    sys = system(4, [
        ([F(-1, 4), 8, 1, -9], GE, 0),
        ([F(-1, 2), 12, F(1, 2), -3], GE, 0),
        ([0, 0, -1, 0], GE, -1),
        ([F(3, 4), -20, F(1, 2), -6], GT, 0),
    ], nonneg=True)
    out = solve_feasibility(sys)
    assert out.feasible and sys.holds(out.witness)


coeff = st.integers(-3, 3)


@st.composite
def systems(draw, max_vars=6, max_rows=10, rels=(GE, GT, EQ)):
    n = draw(st.integers(1, max_vars))
    m = draw(st.integers(1, max_rows))
    rows = [
        (draw(st.lists(coeff, min_size=n, max_size=n)), draw(st.sampled_from(rels)), draw(st.integers(-4, 4)))
        for _ in range(m)
    ]
    return system(n, rows, nonneg=draw(st.booleans()))


@settings(max_examples=300, deadline=None)
@given(systems())
def test_agrees_with_fourier_motzkin(sys):
    out = solve_feasibility(sys)
    assert out.feasible == fourier_motzkin.is_feasible(sys)
    if out.feasible:
        assert sys.holds(out.witness)


@settings(max_examples=200, deadline=None)
@given(systems(max_vars=8, max_rows=6))
def test_small_support_bound(sys):
    sys = LinSystem(sys.dim, sys.constraints, nonneg=True)
    out = small_support_solution(sys)
    assert out.feasible == solve_feasibility(sys).feasible
    if out.feasible:
        assert sys.holds(out.witness)
        assert sum(1 for v in out.witness if v) <= len(sys.constraints)


def test_fourier_motzkin_by_hand():
    box = [([1, 1], GT, 1), ([-1, 0], GE, -1), ([0, 1], GE, 0)]
    assert fourier_motzkin.is_feasible(system(2, box))
    assert not fourier_motzkin.is_feasible(system(2, box + [([-1, -1], GE, -1)]))
    assert not fourier_motzkin.is_feasible(system(1, [([0], GT, 0)]))
    assert fourier_motzkin.is_feasible(system(2, [([1, 1], EQ, 2), ([1, -1], EQ, 0), ([1, 0], GT, F(1, 2))]))
