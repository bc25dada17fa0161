"""Finite upper probability structures and model checking.

A structure is a finite state set, a truth valuation per state, and a
finite nonempty family of probability measures on the full powerset.
Because the family is finite the upper probability of an event is a
maximum, computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import yaml

from . import prop
from .lang import BasicL, LAnd, LFormula, LNot, LOr, REL_GE, format_rational
from .prop import PropFormula


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class Measure:
    """Probability masses, one per state, in the structure's state order."""

    masses: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "masses", tuple(Fraction(m) for m in self.masses))
        if any(m < 0 for m in self.masses):
            raise StructureError("negative probability mass")
        if sum(self.masses) != 1:
            raise StructureError(f"masses sum to {format_rational(sum(self.masses))}, not 1")

    def of(self, indices: Iterable[int]) -> Fraction:
        return sum((self.masses[i] for i in indices), Fraction(0))


@dataclass(frozen=True)
class UPStructure:
    states: tuple[str, ...]
    valuation: Mapping[str, frozenset[str]]  # state -> propositions true there
    measures: tuple[Measure, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "measures", tuple(self.measures))
        object.__setattr__(
            self, "valuation", {s: frozenset(self.valuation.get(s, ())) for s in self.states}
        )
        if not self.states:
            raise StructureError("a structure needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise StructureError("duplicate state names")
        if not self.measures:
            raise StructureError("a structure needs at least one measure")
        for mu in self.measures:
            if len(mu.masses) != len(self.states):
                raise StructureError(
                    f"measure has {len(mu.masses)} masses for {len(self.states)} states"
                )

    def __hash__(self):
        return hash((self.states, self.measures))

    @property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    def truth(self, state: str) -> dict[str, bool]:
        return {p: True for p in self.valuation[state]}


def extension(M: UPStructure, phi: PropFormula) -> frozenset[str]:
    """States of ``M`` where ``phi`` holds; unmentioned propositions are false."""
    return frozenset(s for s in M.states if prop.evaluate(phi, M.truth(s)))


def _indices(M: UPStructure, X: Iterable[str]) -> list[int]:
    idx = M.index
    try:
        return [idx[s] for s in X]
    except KeyError as exc:
        raise StructureError(f"unknown state {exc.args[0]!r}") from None


def upper(M: UPStructure, X: Iterable[str]) -> Fraction:
    ids = _indices(M, X)
    return max(mu.of(ids) for mu in M.measures)


def lower_set(M: UPStructure, X: Iterable[str]) -> Fraction:
    X = frozenset(X)
    return 1 - upper(M, set(M.states) - X)


def upper_f(M: UPStructure, phi: PropFormula) -> Fraction:
    return upper(M, extension(M, phi))


def lower(M: UPStructure, phi: PropFormula) -> Fraction:
    """Lower probability of ``phi`` through the duality with ``~phi``."""
    return 1 - upper_f(M, prop.Not(phi))


def satisfies(M: UPStructure, f: LFormula) -> bool:
    cache: dict[PropFormula, Fraction] = {}

    def value(phi):
        if phi not in cache:
            cache[phi] = upper_f(M, phi)
        return cache[phi]

    def go(g) -> bool:
        if isinstance(g, BasicL):
            total = sum((c * value(phi) for c, phi in g.term.addends), Fraction(0))
            return total >= g.bound if g.rel == REL_GE else total > g.bound
        if isinstance(g, LNot):
            return not go(g.child)
        if isinstance(g, LAnd):
            return go(g.left) and go(g.right)
        if isinstance(g, LOr):
            return go(g.left) or go(g.right)
        raise TypeError(f"not a likelihood formula: {g!r}")

    return go(f)


def envelope(measures: Sequence[Measure], states: Sequence[str]):
    """The upper probability set function of ``measures``."""
    from .covers import SetFunction, all_subsets

    states = tuple(states)
    values = {}
    for X in all_subsets(states):
        ids = [i for i, s in enumerate(states) if s in X]
        values[X] = max(mu.of(ids) for mu in measures)
    return SetFunction(states, values)


# -- text format ---------------------------------------------------------------
#
#   states: [s_r, s_b, s_y]
#   valuation:
#     s_r: {red: true}
#     s_b: {blue: true}
#   measures:
#     - [3/10, 0, 7/10]

def _rational(value) -> Fraction:
    if isinstance(value, bool):
        raise StructureError(f"not a rational: {value!r}")
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise StructureError(f"not a rational: {value!r}") from None


def load_structure(text: str) -> UPStructure:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise StructureError(f"malformed structure document: {exc}") from None
    if not isinstance(doc, dict) or "states" not in doc or "measures" not in doc:
        raise StructureError("structure document needs 'states' and 'measures'")
    states = [str(s) for s in doc["states"]]
    valuation = {}
    for state, truth in (doc.get("valuation") or {}).items():
        state = str(state)
        if state not in states:
            raise StructureError(f"valuation for unknown state {state!r}")
        truth = truth or {}
        if not isinstance(truth, dict) or not all(isinstance(v, bool) for v in truth.values()):
            raise StructureError(f"valuation of {state!r} must map propositions to true/false")
        valuation[state] = frozenset(str(p) for p, v in truth.items() if v)
    measures = [Measure(tuple(_rational(m) for m in masses)) for masses in doc["measures"]]
    return UPStructure(tuple(states), valuation, tuple(measures))


def dump_structure(M: UPStructure, props: Sequence[str] | None = None) -> str:
    """Serialize ``M``; ``props`` lists propositions to print explicitly (false ones too)."""
    lines = [f"states: [{', '.join(M.states)}]", "valuation:"]
    for s in M.states:
        true_props = M.valuation[s]
        names = list(props) if props is not None else sorted(true_props)
        pairs = ", ".join(f"{p}: {'true' if p in true_props else 'false'}" for p in names)
        lines.append(f"  {s}: {{{pairs}}}")
    lines.append("measures:")
    for mu in M.measures:
        lines.append(f"  - [{', '.join(format_rational(m) for m in mu.masses)}]")
    return "\n".join(lines) + "\n"


def marble_structure() -> UPStructure:
    """Three-colour bag: 30 red, 70 blue-or-yellow in unknown proportion.

    The measures use blue proportions 0, 7/20 and 7/10, a finite subfamily
    that attains the same upper and lower probabilities as the full interval.
    """
    states = ("s_r", "s_b", "s_y")
    valuation = {"s_r": {"red"}, "s_b": {"blue"}, "s_y": {"yellow"}}
    red = Fraction(3, 10)
    measures = tuple(
        Measure((red, alpha, Fraction(7, 10) - alpha))
        for alpha in (Fraction(0), Fraction(7, 20), Fraction(7, 10))
    )
    return UPStructure(states, valuation, measures)
