"""Instances of the upper-probability axioms and a soundness sweep.

Axiom kinds:

* ``L1``  ``l(false) = 0``
* ``L2``  ``l(true) = 1``
* ``L3``  ``l(phi) >= 0``
* ``L4``  ``l(phi_1) + ... + l(phi_m) - n l(phi) >= k`` when ``phi`` is covered
  ``n + k`` times and ``true`` is covered ``k`` times by the ``phi_j``
  (``n = 0`` is allowed)
* ``L5``  ``l(phi) = l(psi)`` for propositionally equivalent ``phi, psi``
* ``Ineq`` a valid Boolean combination of linear inequalities, with its
  variables replaced by likelihood terms
* ``Taut`` a propositional tautology with its letters replaced by
  likelihood formulas
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Optional, Sequence

from . import prop
from .lang import (
    BasicL, LAnd, LFormula, LNot, LOr, Term, eq, format_formula, ge, leaves, parse, parse_prop,
    substitute,
)
from .prop import FALSE, TRUE, PropFormula
from .ratlp import GE, GT, LinConstraint, LinSystem, solve_feasibility
from .satsolver import countermodel, to_dnf
from .structures import Measure, UPStructure, satisfies

KINDS = ("L1", "L2", "L3", "L4", "L5", "Ineq", "Taut")


class AxiomError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomInstance:
    kind: str
    formula: LFormula
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __str__(self):
        return f"{self.kind}: {format_formula(self.formula)}"


def covered_at_least(formulas: Sequence[PropFormula], times: int) -> PropFormula:
    """``OR over |J| = times of AND over j in J of formulas[j]``."""
    groups = [prop.conj([formulas[j] for j in J]) for J in combinations(range(len(formulas)), times)]
    return prop.disj(groups)


def l4_side_condition(phi: PropFormula, phis: Sequence[PropFormula], n: int, k: int) -> bool:
    """Both tautologies required for the L4 instance built from these parameters."""
    if not phis:
        raise AxiomError("L4 needs at least one formula")
    if n < 0 or k < 0:
        raise AxiomError("n and k must be natural numbers")
    return prop.is_tautology(prop.Implies(phi, covered_at_least(phis, k + n))) and prop.is_tautology(
        covered_at_least(phis, k)
    )


def l4_formula(phi: PropFormula, phis: Sequence[PropFormula], n: int, k: int) -> BasicL:
    addends = [(Fraction(1), p) for p in phis]
    if n:
        addends.append((Fraction(-n), phi))
    return ge(Term(tuple(addends)), k)


def ineq_valid(template: LFormula) -> bool:
    """Validity of a Boolean combination of linear inequalities over the reals.

    Each distinct ``l(...)`` argument (compared syntactically) is an
    unconstrained real variable; the template is valid iff every disjunct
    of its negation is an infeasible system.
    """
    variables: list[PropFormula] = []
    for leaf in leaves(template):
        for phi in leaf.term.formulas:
            if phi not in variables:
                variables.append(phi)
    for g in to_dnf(LNot(template)):
        rows = []
        for lit in g:
            term, rel, bound = lit.canonical()
            coeffs = [Fraction(0)] * len(variables)
            for c, phi in term.addends:
                coeffs[variables.index(phi)] += c
            rows.append(LinConstraint(tuple(coeffs), GE if rel == ">=" else GT, bound))
        if solve_feasibility(LinSystem(len(variables), tuple(rows))).feasible:
            return False
    return True


def _replace_letters(phi: PropFormula, mapping: dict) -> LFormula:
    phi = prop.desugar(phi)
    if isinstance(phi, prop.Prim):
        try:
            return mapping[phi.name]
        except KeyError:
            raise AxiomError(f"no likelihood formula for letter {phi.name!r}") from None
    if isinstance(phi, prop.Const):
        raise AxiomError("constants are not allowed in tautology templates")
    if isinstance(phi, prop.Not):
        return LNot(_replace_letters(phi.child, mapping))
    if isinstance(phi, prop.And):
        return LAnd(_replace_letters(phi.left, mapping), _replace_letters(phi.right, mapping))
    return LOr(_replace_letters(phi.left, mapping), _replace_letters(phi.right, mapping))


def instantiate(kind: str, **params) -> AxiomInstance:
    """Build one axiom instance, rejecting parameters that violate its side condition.

    L3: ``phi``.  L4: ``phi``, ``phis``, ``n``, ``k``.  L5: ``phi``, ``psi``.
    Ineq: ``template`` (a likelihood formula read over the reals) and
    optional ``mapping`` from template arguments' letters to formulas.
    Taut: ``template`` (propositional) and ``mapping`` letter -> LFormula.
    """
    if kind == "L1":
        f = eq(Term.of((1, FALSE)), 0)
    elif kind == "L2":
        f = eq(Term.of((1, TRUE)), 1)
    elif kind == "L3":
        f = ge(Term.of((1, params["phi"])), 0)
    elif kind == "L4":
        phi, phis, n, k = params["phi"], list(params["phis"]), params["n"], params["k"]
        if not l4_side_condition(phi, phis, n, k):
            raise AxiomError("L4 side condition fails")
        f = l4_formula(phi, phis, n, k)
    elif kind == "L5":
        phi, psi = params["phi"], params["psi"]
        if not prop.is_equivalent(phi, psi):
            raise AxiomError("L5 needs propositionally equivalent formulas")
        f = eq(Term.of((1, phi), (-1, psi)), 0)
    elif kind == "Ineq":
        template = params["template"]
        if not ineq_valid(template):
            raise AxiomError("template is not a valid linear-inequality formula")
        f = substitute(template, params.get("mapping", {}))
    elif kind == "Taut":
        template = params["template"]
        if not prop.is_tautology(template):
            raise AxiomError("template is not a propositional tautology")
        f = _replace_letters(template, params["mapping"])
    else:
        raise AxiomError(f"unknown axiom kind {kind!r}")
    return AxiomInstance(kind, f, dict(params))


# -- soundness sweep -------------------------------------------------------------

PROP_POOL = ("p", "~p", "q", "p & q", "p | q", "~q", "p & ~q", "true", "false", "r", "q | r")

INEQ_TEMPLATES = (
    "l(x) >= 1 & l(y) >= 1 => l(x) + l(y) >= 2",
    "l(x) - l(y) >= 0 | l(y) - l(x) >= 0",
    "l(x) >= 1/2 => 2 l(x) >= 1",
    "l(x) >= 1 & -l(x) >= -1 => l(x) > 1/2",
    "l(x) + l(y) >= 1 & -l(y) >= 0 => l(x) >= 1",
    "l(x) > 0 | -l(x) >= 0",
)

TAUT_TEMPLATES = ("a | ~a", "a => (b => a)", "a & b => a", "~~a <=> a", "(a => b) | (b => a)")

TAUT_LEAVES = ("l(p) >= 1/2", "l(q) > 0", "l(p & q) + l(~p) >= 1", "l(true) = 1", "l(p) - l(q) >= 1/3")


def _lift_implication(text: str) -> LFormula:
    """Parse ``A => B`` at the likelihood level as ``~A | B``."""
    if "=>" in text:
        lhs, rhs = text.split("=>", 1)
        return LOr(LNot(parse(lhs)), parse(rhs))
    return parse(text)


def default_instances(seed: int = 0, l4_per_config: int = 3) -> list[AxiomInstance]:
    rng = random.Random(seed)
    pool = [parse_prop(t) for t in PROP_POOL]
    out = [instantiate("L1"), instantiate("L2")]
    out += [instantiate("L3", phi=phi) for phi in pool]
    for phi in pool:
        for psi in pool:
            if phi != psi and prop.is_equivalent(phi, psi):
                out.append(instantiate("L5", phi=phi, psi=psi))
    for a, b in [("p & q", "q & p"), ("~(p & q)", "~p | ~q"), ("p => q", "~p | q"), ("~~p", "p")]:
        out.append(instantiate("L5", phi=parse_prop(a), psi=parse_prop(b)))

    # every admissible L4 configuration with m, n, k <= 3 over p, q; a few per (m, n, k)
    configs: dict[tuple[int, int, int], list] = {}
    small = [parse_prop(t) for t in PROP_POOL[:9]]
    for m in range(1, 4):
        for phis in combinations_with_replacement(small, m):
            for phi in small:
                for n in range(4):
                    for k in range(4):
                        if l4_side_condition(phi, phis, n, k):
                            configs.setdefault((m, n, k), []).append((phi, phis))
    for (m, n, k), options in sorted(configs.items(), key=lambda item: item[0]):
        for phi, phis in rng.sample(options, min(len(options), l4_per_config)):
            out.append(instantiate("L4", phi=phi, phis=phis, n=n, k=k))
    p, q, r = (prop.Prim(x) for x in "pqr")
    three = [
        (prop.And(p, q), (p, q, r), 1, 0),
        (TRUE, (p, prop.Not(p), q, prop.Not(q)), 0, 2),
        (prop.conj([p, q, r]), (prop.Or(p, q), prop.Or(q, r), prop.Or(p, r)), 2, 0),
        (r, (prop.Or(r, p), prop.Or(r, prop.Not(p))), 1, 0),
    ]
    for phi, phis, n, k in three:
        out.append(instantiate("L4", phi=phi, phis=phis, n=n, k=k))

    names = {"x": parse_prop("p"), "y": parse_prop("q & r")}
    for text in INEQ_TEMPLATES:
        out.append(instantiate("Ineq", template=_lift_implication(text), mapping=names))
    leaves_ = [parse(t) for t in TAUT_LEAVES]
    for text in TAUT_TEMPLATES:
        template = parse_prop(text)
        letters = prop.prop_vars(template)
        mapping = {a: leaves_[rng.randrange(len(leaves_))] for a in letters}
        out.append(instantiate("Taut", template=template, mapping=mapping))
    return out


def random_structure(rng: random.Random, props: Sequence[str] = ("p", "q", "r"), max_states: int = 5, max_measures: int = 4) -> UPStructure:
    nstates = rng.randint(1, max_states)
    states = tuple(f"w{i}" for i in range(nstates))
    valuation = {s: frozenset(p for p in props if rng.random() < 0.5) for s in states}
    measures = []
    for _ in range(rng.randint(1, max_measures)):
        weights = [rng.randint(0, 6) for _ in states]
        if not any(weights):
            weights[rng.randrange(nstates)] = 1
        total = sum(weights)
        measures.append(Measure(tuple(Fraction(w, total) for w in weights)))
    return UPStructure(states, valuation, tuple(measures))


@dataclass
class SoundnessLine:
    instance: AxiomInstance
    valid: bool
    model_failures: int
    countermodel: Optional[UPStructure] = None

    @property
    def ok(self) -> bool:
        return self.valid and not self.model_failures


@dataclass
class SoundnessReport:
    lines: list[SoundnessLine]
    structures_checked: int

    @property
    def failures(self) -> list[SoundnessLine]:
        return [line for line in self.lines if not line.ok]

    def render(self) -> str:
        out = []
        for line in self.lines:
            verdict = "VALID" if line.ok else "INVALID"
            extra = f" ({line.model_failures} structure failures)" if line.model_failures else ""
            out.append(f"{verdict} {line.instance}{extra}")
        out.append(
            f"{len(self.lines)} instances, {len(self.failures)} failures, "
            f"{self.structures_checked} random structures"
        )
        return "\n".join(out)


def check_instance(inst: AxiomInstance, structures: Sequence[UPStructure]) -> SoundnessLine:
    cm = countermodel(inst.formula)
    bad = sum(1 for M in structures if not satisfies(M, inst.formula))
    return SoundnessLine(inst, cm is None, bad, cm)


def soundness_suite(seed: int = 0, structures: int = 100, extra: Sequence[AxiomInstance] = ()) -> SoundnessReport:
    """Check every generated instance with the solver and on random structures."""
    rng = random.Random(seed)
    sample = [random_structure(rng) for _ in range(structures)]
    lines = [check_instance(inst, sample) for inst in [*default_instances(seed), *extra]]
    return SoundnessReport(lines, structures)
