"""Satisfiability and validity of likelihood formulas.

Each disjunct of the formula's DNF is translated into a linear system in
variables ``x[i][j]``: the mass that a measure maximizing the ``i``-th
distinct event puts on atom ``j``.  The rows say each such measure is a
probability, that measure ``i`` is the largest one on event ``i``, and that
every conjunct holds with ``l(phi_i)`` read as measure ``i``'s mass on
``phi_i``.  A vertex solution gives a model with few states and at most
one measure per distinct event.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import prop
from .lang import BasicL, LAnd, LFormula, LNot, REL_GE, REL_GT, Term
from .prop import MAX_PROPS, AtomMask, PropFormula
from .ratlp import EQ, GE, GT, LinConstraint, LinSystem, small_support_solution
from .structures import Measure, UPStructure, satisfies


class SolverError(RuntimeError):
    """A witness failed re-verification; indicates a bug, never a user error."""


@dataclass(frozen=True)
class Literal:
    basic: BasicL
    negated: bool = False

    def canonical(self) -> tuple[Term, str, Fraction]:
        """``(term, rel, bound)`` with rel in ``>=``/``>``, negation folded in."""
        b = self.basic
        if not self.negated:
            return b.term, b.rel, b.bound
        # ~(t >= a) is -t > -a and ~(t > a) is -t >= -a
        return -b.term, (REL_GT if b.rel == REL_GE else REL_GE), -b.bound


Disjunct = tuple[Literal, ...]


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    model: Optional[UPStructure] = None
    disjunct_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.satisfiable


def to_dnf(f: LFormula) -> list[Disjunct]:
    """Disjunctive normal form with negations pushed onto basic formulas."""

    def go(g: LFormula, neg: bool) -> list[list[Literal]]:
        if isinstance(g, BasicL):
            return [[Literal(g, neg)]]
        if isinstance(g, LNot):
            return go(g.child, not neg)
        left, right = go(g.left, neg), go(g.right, neg)
        is_and = isinstance(g, LAnd) != neg
        if is_and:
            return [a + b for a in left for b in right]
        return left + right

    out = []
    for conj in go(f, False):
        out.append(tuple(dict.fromkeys(conj)))
    return out


@dataclass
class _Layout:
    props: list[str]
    masks: list[AtomMask]  # one per distinct event, in first-occurrence order
    formulas: list[PropFormula]

    @property
    def atoms(self) -> int:
        return 1 << len(self.props)

    def var(self, i: int, j: int) -> int:
        return i * self.atoms + j


def _layout(g: Disjunct, max_props: int = MAX_PROPS) -> _Layout:
    formulas = [phi for lit in g for phi in lit.basic.term.formulas]
    props = prop.joint_vars(formulas)
    masks: list[AtomMask] = []
    reps: list[PropFormula] = []
    for phi in formulas:
        mask = prop.atom_mask(phi, props, max_props)
        if mask not in masks:
            masks.append(mask)
            reps.append(phi)
    return _Layout(props, masks, reps)


def build_disjunct_system(g: Disjunct, max_props: int = MAX_PROPS) -> LinSystem:
    return _system(g, _layout(g, max_props))


def _system(g: Disjunct, lay: _Layout) -> LinSystem:
    k, atoms = len(lay.masks), lay.atoms
    dim = k * atoms
    events = [m.indices() for m in lay.masks]
    rows = []

    def zero():
        return [Fraction(0)] * dim

    for i in range(k):
        row = zero()
        for j in range(atoms):
            row[lay.var(i, j)] = Fraction(1)
        rows.append(LinConstraint(tuple(row), EQ, Fraction(1)))
    for i in range(k):
        for i2 in range(k):
            if i == i2:
                continue
            row = zero()
            for j in events[i]:
                row[lay.var(i, j)] += 1
                row[lay.var(i2, j)] -= 1
            rows.append(LinConstraint(tuple(row), GE, Fraction(0)))
    for lit in g:
        term, rel, bound = lit.canonical()
        row = zero()
        for c, phi in term.addends:
            i = lay.masks.index(prop.atom_mask(phi, lay.props))
            for j in events[i]:
                row[lay.var(i, j)] += c
        rows.append(LinConstraint(tuple(row), GE if rel == REL_GE else GT, bound))
    return LinSystem(dim, tuple(rows), nonneg=True)


def _model(lay: _Layout, x: Sequence[Fraction]) -> UPStructure:
    k, atoms = len(lay.masks), lay.atoms
    support = [j for j in range(atoms) if any(x[lay.var(i, j)] > 0 for i in range(k))]
    states = tuple(f"s{j}" for j in support)
    valuation = {
        f"s{j}": frozenset(p for b, p in enumerate(lay.props) if j >> b & 1) for j in support
    }
    measures = []
    for i in range(k):
        mu = Measure(tuple(x[lay.var(i, j)] for j in support))
        if mu not in measures:
            measures.append(mu)
    return UPStructure(states, valuation, tuple(measures))


def solve_disjunct(g: Disjunct, max_props: int = MAX_PROPS) -> Optional[UPStructure]:
    lay = _layout(g, max_props)
    out = small_support_solution(_system(g, lay))
    if not out.feasible:
        return None
    return _model(lay, out.witness)


def solve(f: LFormula, max_props: int = MAX_PROPS) -> SatResult:
    """Find a small model of ``f`` or report that none exists.

    Disjuncts are tried in syntactic order; the first feasible one wins.
    Every model is re-checked against ``f`` before it is returned.
    """
    for idx, g in enumerate(to_dnf(f)):
        model = solve_disjunct(g, max_props)
        if model is None:
            continue
        if not satisfies(model, f):
            raise SolverError(f"extracted model does not satisfy disjunct {idx}")
        return SatResult(True, model, idx)
    return SatResult(False)


def is_valid(f: LFormula, max_props: int = MAX_PROPS) -> bool:
    return not solve(LNot(f), max_props).satisfiable


def countermodel(f: LFormula, max_props: int = MAX_PROPS) -> Optional[UPStructure]:
    """A structure falsifying ``f``, or None when ``f`` is valid."""
    return solve(LNot(f), max_props).model
