"""Exact rational linear feasibility with strict inequalities.

Systems are lists of rows ``a . x REL b`` with ``REL`` one of ``>=``, ``>``
and ``=``.  Feasibility is decided by a two-phase tableau simplex over
:class:`~fractions.Fraction` with Bland's rule.  Strict rows share one
slack ``t``: each ``a . x > b`` becomes ``a . x >= b + t``, ``t <= 1`` is
added, and the system is feasible iff the maximal ``t`` is positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

GE, GT, EQ = ">=", ">", "="
RELATIONS = (GE, GT, EQ)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class LinConstraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x) if c), Fraction(0))

    def holds(self, x: Sequence[Fraction]) -> bool:
        value = self.lhs(x)
        if self.rel == GE:
            return value >= self.rhs
        if self.rel == GT:
            return value > self.rhs
        return value == self.rhs


@dataclass(frozen=True)
class LinSystem:
    dim: int
    constraints: tuple[LinConstraint, ...] = ()
    nonneg: bool = False

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for row in self.constraints:
            if len(row.coeffs) != self.dim:
                raise DimensionError(
                    f"row has {len(row.coeffs)} coefficients, system dimension is {self.dim}"
                )

    def holds(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.dim:
            return False
        if self.nonneg and any(v < 0 for v in x):
            return False
        return all(row.holds(x) for row in self.constraints)


@dataclass(frozen=True)
class LPOutcome:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]] = None
    # optimal shared slack for strict rows; None when the system has none
    slack: Optional[Fraction] = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.feasible


INFEASIBLE = LPOutcome(False)


class _Tableau:
    """Dense simplex tableau for ``A y = b, y >= 0`` (``b >= 0``)."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], nvars: int):
        m = len(rows)
        self.nvars = nvars
        # artificial columns nvars .. nvars+m-1
        self.ncols = nvars + m
        self.A = [row + [Fraction(int(i == r)) for i in range(m)] for r, row in enumerate(rows)]
        self.b = list(rhs)
        self.basis = [nvars + r for r in range(m)]

    def pivot(self, r: int, c: int):
        A, b = self.A, self.b
        piv = A[r][c]
        row = A[r]
        if piv != 1:
            inv = 1 / piv
            for j in range(self.ncols):
                if row[j]:
                    row[j] *= inv
            b[r] *= inv
        for i in range(len(A)):
            if i == r:
                continue
            f = A[i][c]
            if f:
                other = A[i]
                for j in range(self.ncols):
                    if row[j]:
                        other[j] -= f * row[j]
                b[i] -= f * b[r]
        self.basis[r] = c

    def maximize(self, obj: list[Fraction], allowed: set[int]) -> bool:
        """Maximize ``obj . y`` over columns in ``allowed``; False if unbounded."""
        while True:
            # reduced costs for nonbasic columns
            cb = [obj[j] for j in self.basis]
            entering = None
            in_basis = set(self.basis)
            for c in sorted(allowed):
                if c in in_basis:
                    continue
                rc = obj[c] - sum((cb[i] * self.A[i][c] for i in range(len(self.A)) if self.A[i][c]), Fraction(0))
                if rc > 0:
                    entering = c  # Bland: lowest index with positive reduced cost
                    break
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.A):
                a = row[entering]
                if a > 0:
                    ratio = self.b[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def values(self) -> list[Fraction]:
        y = [Fraction(0)] * self.ncols
        for i, c in enumerate(self.basis):
            y[c] = self.b[i]
        return y


def _standard_form(sys: LinSystem, strict_slack: Optional[Fraction] = None):
    """Translate ``sys`` into ``A y = b, y >= 0``.

    Column layout: original variables (split into ``x+ - x-`` when free),
    one surplus per inequality row, then the shared strict slack ``t`` and
    its bound surplus when strict rows exist and ``strict_slack`` is None.
    When ``strict_slack`` is given, strict rows become ``a.x >= b + strict_slack``.
    """
    n = sys.dim
    ncols = n if sys.nonneg else 2 * n
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    use_t = strict_slack is None and any(r.rel == GT for r in sys.constraints)
    nsurplus = sum(1 for r in sys.constraints if r.rel != EQ)
    t_col = ncols + nsurplus if use_t else None
    total = ncols + nsurplus + (2 if use_t else 0)
    s = ncols
    for row in sys.constraints:
        line = [Fraction(0)] * total
        for j, a in enumerate(row.coeffs):
            line[j] = a
            if not sys.nonneg:
                line[n + j] = -a
        b = row.rhs
        if row.rel != EQ:
            line[s] = Fraction(-1)
            s += 1
        if row.rel == GT:
            if use_t:
                line[t_col] = Fraction(-1)
            else:
                b = b + strict_slack
        rows.append(line)
        rhs.append(b)
    if use_t:
        line = [Fraction(0)] * total
        line[t_col] = Fraction(1)
        line[t_col + 1] = Fraction(1)
        rows.append(line)
        rhs.append(Fraction(1))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    return rows, rhs, total, t_col


def _extract(sys: LinSystem, y: list[Fraction]) -> tuple[Fraction, ...]:
    n = sys.dim
    if sys.nonneg:
        return tuple(y[:n])
    return tuple(y[j] - y[n + j] for j in range(n))


def _phase_one(rows, rhs, total) -> Optional[_Tableau]:
    tab = _Tableau(rows, rhs, total)
    m = len(rows)
    obj = [Fraction(0)] * total + [Fraction(-1)] * m
    tab.maximize(obj, set(range(tab.ncols)))
    if any(tab.b[i] != 0 for i, c in enumerate(tab.basis) if c >= total):
        return None
    # drive zero-level artificials out of the basis where possible
    for i, c in enumerate(tab.basis):
        if c >= total:
            for j in range(total):
                if tab.A[i][j] != 0 and j not in tab.basis:
                    tab.pivot(i, j)
                    break
    return tab


def _check_dims(sys: LinSystem):
    if not isinstance(sys, LinSystem):
        raise TypeError("expected a LinSystem")
    for row in sys.constraints:
        if len(row.coeffs) != sys.dim:
            raise DimensionError("coefficient vector length differs from system dimension")


def solve_feasibility(sys: LinSystem) -> LPOutcome:
    """Decide feasibility of ``sys`` exactly; returns a witness when feasible."""
    _check_dims(sys)
    if not sys.constraints:
        return LPOutcome(True, tuple(Fraction(0) for _ in range(sys.dim)))
    rows, rhs, total, t_col = _standard_form(sys)
    tab = _phase_one(rows, rhs, total)
    if tab is None:
        return INFEASIBLE
    if t_col is None:
        x = _extract(sys, tab.values())
        return LPOutcome(True, x)
    obj = [Fraction(0)] * tab.ncols
    obj[t_col] = Fraction(1)
    tab.maximize(obj, set(range(total)))  # t <= 1 keeps this bounded
    y = tab.values()
    t_star = y[t_col]
    if t_star <= 0:
        return INFEASIBLE
    return LPOutcome(True, _extract(sys, y), slack=t_star)


def small_support_solution(sys: LinSystem) -> LPOutcome:
    """Basic feasible witness of a nonnegative system.

    At most ``len(sys.constraints)`` entries of the witness are positive.
    Strict rows are first tightened to ``a.x >= b + t*`` using the optimal
    shared slack, so the vertex returned still satisfies them strictly.
    """
    if not sys.nonneg:
        raise ValueError("small_support_solution needs a nonnegative system")
    first = solve_feasibility(sys)
    if not first.feasible:
        return first
    if first.slack is None:
        # no strict rows: phase one already stopped at a vertex
        return first
    rows, rhs, total, _ = _standard_form(sys, strict_slack=first.slack)
    tab = _phase_one(rows, rhs, total)
    if tab is None:  # cannot happen: the first witness satisfies the tightened rows
        raise AssertionError("tightened system lost feasibility")
    return LPOutcome(True, _extract(sys, tab.values()), slack=first.slack)


def system(dim: int, rows: Sequence[tuple[Sequence, str, object]], nonneg: bool = False) -> LinSystem:
    """Convenience constructor from ``(coeffs, rel, rhs)`` triples."""
    return LinSystem(dim, tuple(LinConstraint(tuple(c), rel, r) for c, rel, r in rows), nonneg)
