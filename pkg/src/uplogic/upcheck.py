"""Decide whether a set function on a finite powerset is an upper probability.

For each event ``X`` we look for a probability measure lying below the
candidate everywhere and touching it at ``X``.  If every such measure
exists, their pointwise maximum reproduces the candidate exactly; if one
is missing, no family of measures can have the candidate as its envelope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .covers import SetFunction, all_subsets, find_up3_violation
from .ratlp import EQ, GE, LinConstraint, LinSystem, small_support_solution
from .structures import Measure

MAX_GROUND = 10


class ResourceLimitError(RuntimeError):
    pass


REASON_UP1 = "UP1: value at the empty set is not 0"
REASON_UP2 = "UP2: value at the whole space is not 1"
REASON_LP = "no probability measure below the function attains its value here"


@dataclass(frozen=True)
class UPVerdict:
    is_upper: bool
    witnesses: dict = field(default_factory=dict)  # frozenset -> Measure, on success
    witness_set: Optional[frozenset] = None
    reason: Optional[str] = None
    failing_sets: tuple = ()

    def __bool__(self) -> bool:
        return self.is_upper


def dominated_measure_system(v: SetFunction, X: frozenset) -> LinSystem:
    """``mu >= 0``, total mass 1, ``mu(Y) <= v(Y)`` for all ``Y``, ``mu(X) = v(X)``."""
    ground = v.ground
    n = len(ground)

    def indicator(Y):
        return tuple(Fraction(int(s in Y)) for s in ground)

    rows = [LinConstraint(tuple(Fraction(1) for _ in ground), EQ, Fraction(1))]
    for Y in all_subsets(ground):
        if Y and Y != v.omega:
            rows.append(LinConstraint(tuple(-c for c in indicator(Y)), GE, -v(Y)))
    rows.append(LinConstraint(indicator(X), EQ, v(X)))
    return LinSystem(n, tuple(rows), nonneg=True)


def dominated_measure(v: SetFunction, X: frozenset) -> Optional[Measure]:
    out = small_support_solution(dominated_measure_system(v, X))
    return Measure(out.witness) if out.feasible else None


def is_upper_probability(v: SetFunction, max_ground: int = MAX_GROUND, stop_early: bool = True) -> UPVerdict:
    """Exact yes/no, with one touching measure per event on yes.

    With ``stop_early=False`` every failing event is collected in
    ``failing_sets``; ``witness_set`` is always the first in mask order.
    """
    if len(v.ground) > max_ground:
        raise ResourceLimitError(f"ground set of size {len(v.ground)} exceeds the cap of {max_ground}")
    if v(frozenset()) != 0:
        return UPVerdict(False, witness_set=frozenset(), reason=REASON_UP1, failing_sets=(frozenset(),))
    if v(v.omega) != 1:
        return UPVerdict(False, witness_set=v.omega, reason=REASON_UP2, failing_sets=(v.omega,))
    witnesses = {}
    failing = []
    for X in all_subsets(v.ground):
        mu = dominated_measure(v, X)
        if mu is None:
            failing.append(X)
            if stop_early:
                break
        else:
            witnesses[X] = mu
    if failing:
        return UPVerdict(False, witness_set=failing[0], reason=REASON_LP, failing_sets=tuple(failing))
    return UPVerdict(True, witnesses=witnesses)


def witness_envelope(verdict: UPVerdict, ground) -> SetFunction:
    """Pointwise maximum of the witness measures of a positive verdict."""
    from .structures import envelope

    ordered = list(dict.fromkeys(verdict.witnesses.values()))
    return envelope(ordered, ground)


def check_upf(v: SetFunction, bound: int, max_ground: int = 5) -> bool:
    """UPF1, UPF2, and UP3 over every ``(n, k)``-cover with ``m, n, k <= bound``."""
    if len(v.ground) > max_ground:
        raise ResourceLimitError(f"cover enumeration over {len(v.ground)} points exceeds the cap of {max_ground}")
    if v(frozenset()) != 0 or v(v.omega) != 1:
        return False
    return find_up3_violation(v, max_members=bound, max_nk=bound) is None
