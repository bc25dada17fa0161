"""Propositional formulas and their atom-mask semantics.

A formula over an ordered list of propositions ``p_0 .. p_{N-1}`` is
identified with the set of atoms that satisfy it.  Atom ``j`` is the
conjunction that makes ``p_i`` true exactly when bit ``i`` of ``j`` is set
(little-endian), so a formula's semantics is a ``2**N``-bit integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping, Sequence, Union

MAX_PROPS = 16


class PropLimitError(ValueError):
    """Raised when a formula mentions more propositions than the mask cap allows."""


class UnknownPropositionError(KeyError):
    pass


@dataclass(frozen=True)
class Prim:
    name: str

    def __post_init__(self):
        if not self.name or not (self.name[0].isalpha() or self.name[0] == "_"):
            raise ValueError(f"bad proposition name {self.name!r}")


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    child: "PropFormula"


@dataclass(frozen=True)
class And:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Or:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Implies:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Iff:
    left: "PropFormula"
    right: "PropFormula"


PropFormula = Union[Prim, Const, Not, And, Or, Implies, Iff]

TRUE = Const(True)
FALSE = Const(False)


def conj(formulas: Sequence[PropFormula]) -> PropFormula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    if not formulas:
        return TRUE
    out = formulas[0]
    for f in formulas[1:]:
        out = And(out, f)
    return out


def disj(formulas: Sequence[PropFormula]) -> PropFormula:
    """Left-nested disjunction; the empty disjunction is ``false``."""
    if not formulas:
        return FALSE
    out = formulas[0]
    for f in formulas[1:]:
        out = Or(out, f)
    return out


def desugar(phi: PropFormula) -> PropFormula:
    """Rewrite ``=>`` and ``<=>`` in terms of ``~``, ``&`` and ``|``."""
    if isinstance(phi, (Prim, Const)):
        return phi
    if isinstance(phi, Not):
        return Not(desugar(phi.child))
    left, right = desugar(phi.left), desugar(phi.right)
    if isinstance(phi, And):
        return And(left, right)
    if isinstance(phi, Or):
        return Or(left, right)
    if isinstance(phi, Implies):
        return Or(Not(left), right)
    if isinstance(phi, Iff):
        return And(Or(Not(left), right), Or(Not(right), left))
    raise TypeError(f"not a propositional formula: {phi!r}")


def prop_vars(phi: PropFormula) -> list[str]:
    """Proposition names in first-occurrence, left-to-right order."""
    seen: dict[str, None] = {}

    def walk(node):
        if isinstance(node, Prim):
            seen.setdefault(node.name, None)
        elif isinstance(node, Not):
            walk(node.child)
        elif isinstance(node, Const):
            pass
        else:
            walk(node.left)
            walk(node.right)

    walk(phi)
    return list(seen)


def joint_vars(formulas: Sequence[PropFormula]) -> list[str]:
    seen: dict[str, None] = {}
    for phi in formulas:
        for name in prop_vars(phi):
            seen.setdefault(name, None)
    return list(seen)


def evaluate(phi: PropFormula, assignment: Mapping[str, bool]) -> bool:
    """Truth value of ``phi`` under ``assignment``; missing propositions are false."""
    if isinstance(phi, Prim):
        return bool(assignment.get(phi.name, False))
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Not):
        return not evaluate(phi.child, assignment)
    left = evaluate(phi.left, assignment)
    if isinstance(phi, And):
        return left and evaluate(phi.right, assignment)
    if isinstance(phi, Or):
        return left or evaluate(phi.right, assignment)
    right = evaluate(phi.right, assignment)
    if isinstance(phi, Implies):
        return (not left) or right
    if isinstance(phi, Iff):
        return left == right
    raise TypeError(f"not a propositional formula: {phi!r}")


@dataclass(frozen=True)
class AtomMask:
    """Set of atoms over ``num_props`` propositions, stored as an int bitset."""

    num_props: int
    value: int

    @property
    def size(self) -> int:
        return 1 << self.num_props

    @property
    def bits(self) -> tuple[bool, ...]:
        return tuple(bool(self.value >> j & 1) for j in range(self.size))

    def indices(self) -> list[int]:
        return [j for j in range(self.size) if self.value >> j & 1]

    def count(self) -> int:
        return bin(self.value).count("1")

    def _check(self, other: "AtomMask"):
        if other.num_props != self.num_props:
            raise ValueError("masks over different proposition counts")

    def __invert__(self) -> "AtomMask":
        return AtomMask(self.num_props, _full(self.num_props) & ~self.value)

    def __and__(self, other: "AtomMask") -> "AtomMask":
        self._check(other)
        return AtomMask(self.num_props, self.value & other.value)

    def __or__(self, other: "AtomMask") -> "AtomMask":
        self._check(other)
        return AtomMask(self.num_props, self.value | other.value)

    def is_full(self) -> bool:
        return self.value == _full(self.num_props)


def _full(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def _prim_bits(i: int, n: int) -> int:
    out = 0
    for j in range(1 << n):
        if j >> i & 1:
            out |= 1 << j
    return out


def atom_mask(phi: PropFormula, order: Sequence[str], max_props: int = MAX_PROPS) -> AtomMask:
    """Atoms over ``order`` that satisfy ``phi``."""
    n = len(order)
    if n > max_props:
        raise PropLimitError(f"{n} propositions exceed the cap of {max_props}")
    index = {name: i for i, name in enumerate(order)}
    full = _full(n)

    def go(node) -> int:
        if isinstance(node, Prim):
            try:
                return _prim_bits(index[node.name], n)
            except KeyError:
                raise UnknownPropositionError(
                    f"proposition {node.name!r} is not in the order {list(order)}"
                ) from None
        if isinstance(node, Const):
            return full if node.value else 0
        if isinstance(node, Not):
            return full & ~go(node.child)
        if isinstance(node, And):
            return go(node.left) & go(node.right)
        if isinstance(node, Or):
            return go(node.left) | go(node.right)
        raise TypeError(f"not a propositional formula: {node!r}")

    return AtomMask(n, go(desugar(phi)))


def atom(j: int, order: Sequence[str]) -> PropFormula:
    """The conjunction of literals describing atom ``j``."""
    lits = [Prim(p) if j >> i & 1 else Not(Prim(p)) for i, p in enumerate(order)]
    return conj(lits)


def is_tautology(phi: PropFormula) -> bool:
    return atom_mask(phi, prop_vars(phi)).is_full()


def is_satisfiable(phi: PropFormula) -> bool:
    return atom_mask(phi, prop_vars(phi)).value != 0


def is_equivalent(phi: PropFormula, psi: PropFormula) -> bool:
    order = joint_vars([phi, psi])
    return atom_mask(phi, order) == atom_mask(psi, order)


def assignments(order: Sequence[str]) -> Iterator[dict[str, bool]]:
    """All truth assignments over ``order`` (used by truth-table checks)."""
    for values in product((False, True), repeat=len(order)):
        yield dict(zip(order, values))
