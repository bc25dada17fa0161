from hypothesis import given
import pytest

from uplogic import prop
from uplogic.lang import parse_prop
from uplogic.prop import (
    FALSE, TRUE, And, AtomMask, Not, Or, Prim, PropLimitError, UnknownPropositionError, atom,
    atom_mask, evaluate, is_equivalent, is_satisfiable, is_tautology, prop_vars,
)

from strategies import prop_formulas

p, q = Prim("p"), Prim("q")


def test_prop_vars_first_occurrence():
    assert prop_vars(parse_prop("p & ~p")) == ["p"]
    assert prop_vars(TRUE) == []
    assert prop_vars(parse_prop("(q | p) & q")) == ["q", "p"]


def test_prim_rejects_bad_names():
    with pytest.raises(ValueError):
        Prim("1abc")
    with pytest.raises(ValueError):
        Prim("")


def test_atom_mask_single_variable():
    assert atom_mask(p, ["p"]).bits == (False, True)
    assert atom_mask(And(p, Not(p)), ["p"]).value == 0


def test_atom_mask_disjunction_has_three_atoms():
    m = atom_mask(Or(Prim("p1"), Prim("p2")), ["p1", "p2"])
    assert m.count() == 3
    assert m.bits == (False, True, True, True)


def test_atom_mask_unknown_proposition():
    with pytest.raises(UnknownPropositionError, match="q"):
        atom_mask(And(p, q), ["p"])


def test_atom_mask_cap():
    order = [f"x{i}" for i in range(5)]
    with pytest.raises(PropLimitError):
        atom_mask(Prim("x0"), order, max_props=4)


def test_mask_ops_reject_mixed_sizes():
    with pytest.raises(ValueError):
        AtomMask(1, 1) & AtomMask(2, 1)


def test_tautology_examples():
    assert is_tautology(parse_prop("p | ~p"))
    assert is_tautology(parse_prop("p => (q => p)"))
    assert not is_tautology(p)
    assert is_equivalent(parse_prop("~(p & q)"), parse_prop("~p | ~q"))
    assert not is_equivalent(parse_prop("p => q"), parse_prop("q => p"))
    assert is_satisfiable(p) and not is_satisfiable(FALSE)


def test_missing_proposition_reads_false():
    assert evaluate(Not(p), {}) is True


@given(prop_formulas(), prop_formulas())
def test_mask_homomorphism(phi, psi):
    order = prop.joint_vars([phi, psi])
    assert atom_mask(Not(phi), order) == ~atom_mask(phi, order)
    assert atom_mask(And(phi, psi), order) == atom_mask(phi, order) & atom_mask(psi, order)
    assert atom_mask(Or(phi, psi), order) == atom_mask(phi, order) | atom_mask(psi, order)


@given(prop_formulas())
def test_mask_matches_truth_table(phi):
    order = prop_vars(phi)
    mask = atom_mask(phi, order)
    for row in prop.assignments(order):
        # atom indices use the first letter as bit 0
        idx = sum(1 << i for i, x in enumerate(order) if row[x])
        assert mask.bits[idx] == evaluate(phi, row)
    assert is_tautology(phi) == all(evaluate(phi, row) for row in prop.assignments(order))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_atom_formula_has_single_bit(n):
    order = ["p", "q", "r"][:n]
    for j in range(1 << n):
        assert atom_mask(atom(j, order), order).indices() == [j]
