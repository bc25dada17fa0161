"""Fourier-Motzkin elimination over the rationals.

Independent feasibility oracle for :mod:`uplogic.ratlp`.  It shares no code
with the simplex: equalities are substituted away, then variables are
eliminated one at a time, tracking strictness, with Chernikov's history
rule pruning redundant combinations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .ratlp import EQ, GT, LinSystem

# A row is (coeffs, strict, rhs, history): coeffs . x >= rhs, or > when strict.


def _normalize(coeffs, strict, rhs):
    nums = [c for c in coeffs if c] + ([rhs] if rhs else [])
    if not nums:
        return tuple(coeffs), strict, rhs
    lcm = 1
    for q in nums:
        lcm = lcm * q.denominator // gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in nums]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    scale = Fraction(lcm, g)
    return tuple(c * scale for c in coeffs), strict, rhs * scale


def _substitute_equalities(rows, eqs, n):
    """Gaussian elimination of equality rows; returns inequality rows or None."""
    eqs = [(list(c), r) for c, r in eqs]
    while eqs:
        coeffs, rhs = eqs.pop()
        pivot = next((j for j in range(n) if coeffs[j]), None)
        if pivot is None:
            if rhs != 0:
                return None
            continue
        a = coeffs[pivot]
        # x_pivot = (rhs - sum_{j != pivot} coeffs_j x_j) / a

        def sub(c, r):
            f = c[pivot]
            if not f:
                return c, r
            c = [c[j] - f * coeffs[j] / a for j in range(n)]
            c[pivot] = Fraction(0)
            return c, r - f * rhs / a

        eqs = [sub(c, r) for c, r in eqs]
        new_rows = []
        for c, strict, r in rows:
            c2, r2 = sub(list(c), r)
            new_rows.append((c2, strict, r2))
        rows = new_rows
    return rows


def is_feasible(sys: LinSystem) -> bool:
    n = sys.dim
    ineqs = []
    eqs = []
    for row in sys.constraints:
        if row.rel == EQ:
            eqs.append((row.coeffs, row.rhs))
        else:
            ineqs.append((row.coeffs, row.rel == GT, row.rhs))
    if sys.nonneg:
        for j in range(n):
            ineqs.append((tuple(Fraction(int(i == j)) for i in range(n)), False, Fraction(0)))
    ineqs = _substitute_equalities(ineqs, eqs, n)
    if ineqs is None:
        return False

    rows = {}
    for idx, (c, strict, r) in enumerate(ineqs):
        key = _normalize(c, strict, r)
        rows.setdefault(key, frozenset([idx]))

    eliminated = 0
    for var in range(n):
        pos, neg, rest = [], [], []
        for (c, strict, r), hist in rows.items():
            (pos if c[var] > 0 else neg if c[var] < 0 else rest).append((c, strict, r, hist))
        if not pos and not neg:
            continue
        eliminated += 1
        new_rows = {}
        for c, strict, r, hist in rest:
            new_rows.setdefault((c, strict, r), hist)
        for cp, sp, rp, hp in pos:
            for cn, sn, rn, hn in neg:
                hist = hp | hn
                if len(hist) > eliminated + 1:
                    continue
                a, b = cp[var], -cn[var]
                c = tuple(b * x + a * y for x, y in zip(cp, cn))
                key = _normalize(c, sp or sn, b * rp + a * rn)
                old = new_rows.get(key)
                if old is None or len(hist) < len(old):
                    new_rows[key] = hist
        rows = new_rows

    for (c, strict, r) in rows:
        if strict and not 0 > r:
            return False
        if not strict and not 0 >= r:
            return False
    return True
