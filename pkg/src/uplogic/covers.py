"""Multiset covers, set functions, and the inequality properties they satisfy.

Subsets of a ground set are handled as ``frozenset`` at the API surface and
as little-endian bitmasks over the ground order internally.  A multiset
``{{A_1, ..., A_m}}`` is an ``(n, k)``-cover of ``(A, Omega)`` when every
point of ``Omega`` lies in at least ``k`` members and every point of ``A``
in at least ``n + k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import lcm
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .lang import format_rational

MAX_MEMBERS = 6


class CoverError(ValueError):
    pass


def all_subsets(ground: Sequence) -> list[frozenset]:
    """Every subset of ``ground``, ordered by little-endian bitmask."""
    ground = tuple(ground)
    return [frozenset(x for i, x in enumerate(ground) if mask >> i & 1) for mask in range(1 << len(ground))]


def _to_mask(ground: Sequence, X: Iterable) -> int:
    pos = {x: i for i, x in enumerate(ground)}
    mask = 0
    for x in X:
        if x not in pos:
            raise CoverError(f"{x!r} is not in the ground set")
        mask |= 1 << pos[x]
    return mask


@dataclass(frozen=True)
class MultisetCover:
    ground: tuple
    members: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "members", tuple(frozenset(m) for m in self.members))
        universe = set(self.ground)
        for m in self.members:
            if not m <= universe:
                raise CoverError(f"member {sorted(m)} is not a subset of the ground set")

    def multiplicity(self, x) -> int:
        return sum(1 for m in self.members if x in m)


@dataclass(frozen=True)
class SetFunction:
    """A rational-valued function on every subset of a finite ground set."""

    ground: tuple
    values: Mapping[frozenset, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        vals = {frozenset(k): Fraction(v) for k, v in self.values.items()}
        missing = [X for X in all_subsets(self.ground) if X not in vals]
        if missing:
            raise CoverError(f"set function undefined on {sorted(missing[0])}")
        if len(vals) != 1 << len(self.ground):
            raise CoverError("set function defined outside the powerset of its ground set")
        object.__setattr__(self, "values", vals)

    def __call__(self, X: Iterable) -> Fraction:
        return self.values[frozenset(X)]

    def __hash__(self):
        return hash((self.ground, frozenset(self.values.items())))

    @property
    def omega(self) -> frozenset:
        return frozenset(self.ground)

    def dual(self) -> "SetFunction":
        """``X -> 1 - f(complement of X)``."""
        return SetFunction(self.ground, {X: 1 - self.values[self.omega - X] for X in self.values})

    def by_mask(self) -> list[Fraction]:
        return [self.values[X] for X in all_subsets(self.ground)]

    def scaled_ints(self) -> tuple[list[int], int]:
        """Integer values ``f(X) * D`` by mask, with the common denominator ``D``."""
        vals = self.by_mask()
        d = lcm(*(v.denominator for v in vals))
        return [int(v * d) for v in vals], d


# -- covers --------------------------------------------------------------------

def covers_n_times(C: MultisetCover, A: Iterable, n: int) -> bool:
    return all(C.multiplicity(x) >= n for x in A)


def _check_subset(C: MultisetCover, A: Iterable) -> frozenset:
    A = frozenset(A)
    if not A <= set(C.ground):
        raise CoverError(f"{sorted(A)} is not a subset of the ground set")
    return A


def is_nk_cover(C: MultisetCover, A: Iterable, n: int, k: int) -> bool:
    A = _check_subset(C, A)
    return covers_n_times(C, C.ground, k) and covers_n_times(C, A, n + k)


def is_exact_nk_cover(C: MultisetCover, A: Iterable, n: int, k: int) -> bool:
    A = _check_subset(C, A)
    return all(C.multiplicity(x) == (n + k if x in A else k) for x in C.ground)


class Decomposition(NamedTuple):
    first: MultisetCover
    first_nk: tuple[int, int]
    second: MultisetCover
    second_nk: tuple[int, int]


def _exact_params(C: MultisetCover, A: frozenset, n: int, k: int) -> Optional[tuple[int, int]]:
    """``(n1, k1)`` with ``n1 <= n``, ``k1 <= k`` making ``C`` exact for ``(A, Omega)``, if any."""
    inside = {C.multiplicity(x) for x in A}
    outside = {C.multiplicity(x) for x in C.ground if x not in A}
    if len(inside) > 1 or len(outside) > 1:
        return None
    if outside:
        k1 = outside.pop()
        if inside:
            n1 = inside.pop() - k1
        else:
            n1 = 0
    else:
        total = inside.pop()
        k1 = min(k, total)
        n1 = total - k1
    if 0 <= n1 <= n and 0 <= k1 <= k:
        return n1, k1
    return None


def decompose(C: MultisetCover, A: Iterable, n: int, k: int) -> Optional[Decomposition]:
    """Split an exact ``(n, k)``-cover into two exact covers, or return None.

    Exhaustive over sub-multisets, so only meant for small covers.
    """
    A = _check_subset(C, A)
    if not is_exact_nk_cover(C, A, n, k):
        raise CoverError(f"not an exact ({n},{k})-cover")
    distinct = sorted(set(C.members), key=lambda m: _to_mask(C.ground, m))
    counts = [C.members.count(m) for m in distinct]
    for take in product(*(range(c + 1) for c in counts)):
        if not any(take) or list(take) == counts:
            continue
        first = MultisetCover(C.ground, [m for m, t in zip(distinct, take) for _ in range(t)])
        second = MultisetCover(C.ground, [m for m, t, c in zip(distinct, take, counts) for _ in range(c - t)])
        params = _exact_params(first, A, n, k)
        if params is None:
            continue
        n1, k1 = params
        if is_exact_nk_cover(second, A, n - n1, k - k1):
            return Decomposition(first, (n1, k1), second, (n - n1, k - k1))
    return None


def up3_holds(v: SetFunction, A: Iterable, C: MultisetCover, n: int, k: int) -> bool:
    """``k + n v(A) <= sum of v over the members`` for an ``(n, k)``-cover."""
    if not is_nk_cover(C, A, n, k):
        raise CoverError(f"not an ({n},{k})-cover")
    return k + n * v(A) <= sum((v(m) for m in C.members), Fraction(0))


def enumerate_covers(ground: Sequence, max_members: int = MAX_MEMBERS) -> Iterator[tuple[int, ...]]:
    """Every multiset of at most ``max_members`` subsets, as tuples of masks.

    Order: by size, then lexicographically by mask (combinations with
    replacement).  Any exhaustive order would do.
    """
    subsets = range(1 << len(ground))
    for m in range(0, max_members + 1):
        yield from combinations_with_replacement(subsets, m)


class UP3Violation(NamedTuple):
    cover: MultisetCover
    target: frozenset
    n: int
    k: int


def up3_violations(
    v: SetFunction, max_members: int = MAX_MEMBERS, max_nk: Optional[int] = None
) -> Iterator[UP3Violation]:
    """Covers with at most ``max_members`` members on which UP3 fails.

    ``n`` and ``k`` range over every value making the multiset an
    ``(n, k)``-cover, capped by ``max_nk`` (default ``max_members``, which
    only binds for the empty target).  The inequality is affine in ``n``
    for fixed ``k`` so the extreme ``n`` is the only one tested.
    """
    ground = v.ground
    size = len(ground)
    cap = max_members if max_nk is None else max_nk
    vals, d = v.scaled_ints()
    nsets = 1 << size
    subsets = all_subsets(ground)
    for cover in enumerate_covers(ground, max_members):
        mult = [sum(1 for mask in cover if mask >> e & 1) for e in range(size)]
        total = sum(vals[mask] for mask in cover)
        kmax = min(min(mult) if mult else 0, cap)
        for A in range(nsets):
            in_a = [mult[e] for e in range(size) if A >> e & 1]
            floor_a = min(in_a) if in_a else None
            for k in range(kmax + 1):
                nmax = cap if floor_a is None else min(floor_a - k, cap)
                if nmax < 0:
                    continue
                n = nmax if vals[A] > 0 else 0
                if k * d + n * vals[A] > total:
                    yield UP3Violation(MultisetCover(ground, [subsets[m] for m in cover]), subsets[A], n, k)


def find_up3_violation(v: SetFunction, max_members: int = MAX_MEMBERS, max_nk: Optional[int] = None):
    return next(up3_violations(v, max_members, max_nk), None)


# -- inequality properties (1)-(10) ---------------------------------------------

PAIR_PROPERTIES = (3, 4, 5, 6, 7, 8, 9, 10)
DISJOINT_PROPERTIES = (6, 10)


def _chain(*values) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def _eval_property(i: int, up: Callable[[int], object], low: Callable[[int], object], sets: Sequence[int]) -> bool:
    if i in (1, 2):
        union = 0
        for s in sets:
            union |= s
        total = 0
        for size in range(1, len(sets) + 1):
            sign = 1 if size % 2 else -1
            for group in combinations(sets, size):
                inter = group[0]
                for s in group[1:]:
                    inter &= s
                # P^{-1} = upper, P^{+1} = lower
                if i == 1:
                    term = up(inter) if size % 2 else low(inter)
                else:
                    term = low(inter) if size % 2 else up(inter)
                total += sign * term
        return up(union) <= total if i == 1 else low(union) >= total
    a, b = sets
    u, n = a | b, a & b
    if i == 3:
        return _chain(low(u) + low(n), low(a) + up(b), up(u) + up(n))
    if i == 4:
        return _chain(low(a) + low(b), low(u) + up(n), up(a) + up(b))
    if i == 5:
        return _chain(low(a) + low(b), low(n) + up(u), up(a) + up(b))
    if i == 6:
        return _chain(up(a) + low(b), up(u), up(a) + up(b))
    if i == 7:
        return low(a) + low(b) <= low(u) + up(n)
    if i == 8:
        return low(a) + low(b) <= low(n) + up(u)
    if i == 9:
        return low(u) + low(n) <= low(a) + up(b)
    if i == 10:
        return _chain(low(a) + low(b), low(u), low(a) + up(b), up(u), up(a) + up(b))
    raise CoverError(f"no property ({i})")


def check_property(i: int, upper: SetFunction, lower: SetFunction, *sets: Iterable) -> bool:
    """Evaluate inequality property ``i`` (1..10) for the given sets exactly."""
    if not 1 <= i <= 10:
        raise CoverError(f"no property ({i})")
    if upper.ground != lower.ground:
        raise CoverError("upper and lower functions over different ground sets")
    masks = [_to_mask(upper.ground, X) for X in sets]
    if i in (1, 2):
        if not masks:
            raise CoverError(f"property ({i}) needs at least one set")
    elif len(masks) != 2:
        raise CoverError(f"property ({i}) takes exactly two sets, got {len(masks)}")
    if i in DISJOINT_PROPERTIES and masks[0] & masks[1]:
        raise CoverError(f"property ({i}) needs disjoint sets")
    up, low = upper.by_mask(), lower.by_mask()
    return _eval_property(i, up.__getitem__, low.__getitem__, masks)


def property_counterexample(i: int, upper: SetFunction, lower: SetFunction | None = None, max_sets: int = 3):
    """First argument tuple on which property ``i`` fails, or None.

    Pair properties range over all ordered pairs (disjoint ones for (6) and
    (10)); properties (1) and (2) over multisets of 1..``max_sets`` sets.
    """
    lower = upper.dual() if lower is None else lower
    up, d1 = upper.scaled_ints()
    low, d2 = lower.scaled_ints()
    # the properties are homogeneous, so a shared positive scale is harmless
    d = lcm(d1, d2)
    up = [x * (d // d1) for x in up]
    low = [x * (d // d2) for x in low]
    nsets = 1 << len(upper.ground)
    subsets = all_subsets(upper.ground)
    if i in (1, 2):
        for size in range(1, max_sets + 1):
            for group in combinations_with_replacement(range(nsets), size):
                if not _eval_property(i, up.__getitem__, low.__getitem__, group):
                    return tuple(subsets[g] for g in group)
        return None
    for a in range(nsets):
        for b in range(nsets):
            if i in DISJOINT_PROPERTIES and a & b:
                continue
            if not _eval_property(i, up.__getitem__, low.__getitem__, (a, b)):
                return subsets[a], subsets[b]
    return None


def property_holds_everywhere(i: int, upper: SetFunction, lower: SetFunction | None = None, max_sets: int = 3) -> bool:
    return property_counterexample(i, upper, lower, max_sets) is None


# -- the four-measure counterexample ---------------------------------------------

PROP22_GROUND = ("a", "b", "c", "d")
PROP22_TABLE = (
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(0), Fraction(1, 8), Fraction(3, 8), Fraction(1, 2)),
    (Fraction(1, 8), Fraction(3, 8), Fraction(0), Fraction(1, 2)),
    (Fraction(3, 8), Fraction(0), Fraction(1, 8), Fraction(1, 2)),
)


def prop22_envelope() -> SetFunction:
    from .structures import Measure, envelope

    return envelope([Measure(row) for row in PROP22_TABLE], PROP22_GROUND)


def make_upsilon_epsilon(eps) -> SetFunction:
    """Envelope of the four-measure table, raised by ``eps`` at ``{a, b, c}``.

    For ``0 < eps < 1/8`` the result satisfies property (6) everywhere but is
    not the upper envelope of any set of probability measures.
    """
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 8):
        raise CoverError("eps must lie strictly between 0 and 1/8")
    base = prop22_envelope()
    values = dict(base.values)
    values[frozenset("abc")] += eps
    return SetFunction(base.ground, values)


# -- text formats ----------------------------------------------------------------
#
#   ground: a b c d
#   [] -> 0
#   [a] -> 1/4
#   [a, b] -> 1/2

_SF_LINE = re.compile(r"^\[(?P<members>[^\]]*)\]\s*(?:->|→)\s*(?P<value>\S+)$")


def format_subset(X: Iterable, ground: Sequence) -> str:
    order = {x: i for i, x in enumerate(ground)}
    return "[" + ", ".join(str(x) for x in sorted(X, key=order.__getitem__)) + "]"


def load_set_function(text: str) -> SetFunction:
    ground = None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ground is None:
            if not line.startswith("ground:"):
                raise CoverError(f"line {lineno}: expected 'ground:' header")
            ground = tuple(line[len("ground:"):].replace(",", " ").split())
            if len(set(ground)) != len(ground):
                raise CoverError(f"line {lineno}: duplicate ground element")
            continue
        m = _SF_LINE.match(line)
        if not m:
            raise CoverError(f"line {lineno}: expected '[x, y] -> a/b'")
        members = frozenset(x for x in m.group("members").replace(",", " ").split())
        if not members <= set(ground):
            raise CoverError(f"line {lineno}: subset not within the ground set")
        if members in values:
            raise CoverError(f"line {lineno}: subset listed twice")
        try:
            values[members] = Fraction(m.group("value"))
        except (ValueError, ZeroDivisionError):
            raise CoverError(f"line {lineno}: bad rational {m.group('value')!r}") from None
    if ground is None:
        raise CoverError("empty set-function file")
    return SetFunction(ground, values)


def dump_set_function(v: SetFunction) -> str:
    lines = ["ground: " + " ".join(str(x) for x in v.ground)]
    for X in all_subsets(v.ground):
        lines.append(f"{format_subset(X, v.ground)} -> {format_rational(v(X))}")
    return "\n".join(lines) + "\n"


@dataclass
class CoverQuery:
    cover: MultisetCover
    target: frozenset
    n: int
    k: int
    set_function: Optional[SetFunction] = None


def load_cover_query(text: str, set_function_loader: Callable[[str], SetFunction] | None = None) -> CoverQuery:
    """Parse a YAML cover query::

        ground: [1, 2, 3]
        target: [2]
        n: 2
        k: 2
        members: [[1, 2], [2, 3], [1, 3], [2], [2]]
        setfunction: values.sf     # optional, checked against UP3
    """
    import yaml

    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise CoverError(f"malformed cover query: {exc}") from None
    if not isinstance(doc, dict):
        raise CoverError("cover query must be a mapping")
    for key in ("ground", "target", "n", "k", "members"):
        if key not in doc:
            raise CoverError(f"cover query is missing {key!r}")
    ground = tuple(str(x) for x in doc["ground"])
    members = [frozenset(str(x) for x in (m or ())) for m in doc["members"]]
    n, k = doc["n"], doc["k"]
    if not (isinstance(n, int) and isinstance(k, int)) or n < 0 or k < 0:
        raise CoverError("n and k must be natural numbers")
    query = CoverQuery(MultisetCover(ground, members), frozenset(str(x) for x in doc["target"] or ()), n, k)
    if not query.target <= set(ground):
        raise CoverError("target is not a subset of the ground set")
    if doc.get("setfunction") is not None:
        if set_function_loader is None:
            raise CoverError("no loader for the referenced set function")
        query.set_function = set_function_loader(str(doc["setfunction"]))
        if set(query.set_function.ground) != set(ground):
            raise CoverError("set function ground differs from the cover ground")
    return query
