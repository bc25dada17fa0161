"""Command-line front end.

Exit codes: 0 for sat / valid / yes / holds, 1 for unsat / invalid / no /
violated, 2 for usage, parse and resource errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .axioms import soundness_suite
from .covers import (
    CoverError, MAX_MEMBERS, decompose, find_up3_violation, format_subset, is_exact_nk_cover,
    is_nk_cover, load_cover_query, load_set_function, make_upsilon_epsilon, property_counterexample,
    up3_holds,
)
from .lang import ParseError, format_formula, format_prop, format_rational, parse, parse_prop, prop_formulas
from .prop import MAX_PROPS, PropLimitError, UnknownPropositionError
from .satsolver import countermodel, solve
from .structures import (
    StructureError, UPStructure, dump_structure, load_structure, lower, marble_structure, satisfies,
    upper_f,
)
from .upcheck import ResourceLimitError, UPVerdict, is_upper_probability

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _model_report(M: UPStructure, f, out) -> None:
    names = sorted({p for s in M.states for p in M.valuation[s]})
    out.write(dump_structure(M, names))
    out.write(f"model check: {'PASS' if satisfies(M, f) else 'FAIL'}\n")


def cmd_sat(args, out) -> int:
    f = parse(_read(args.formula))
    result = solve(f, max_props=args.max_props)
    if not result:
        out.write("UNSAT\n")
        return EXIT_NO
    out.write("SAT\n")
    M = result.model
    out.write(f"witness: {len(M.states)} states, {len(M.measures)} measures (disjunct {result.disjunct_index})\n")
    _model_report(M, f, out)
    return EXIT_YES


def cmd_valid(args, out) -> int:
    f = parse(_read(args.formula))
    M = countermodel(f, max_props=args.max_props)
    if M is None:
        out.write("VALID\n")
        return EXIT_YES
    out.write("INVALID\ncountermodel:\n")
    names = sorted({p for s in M.states for p in M.valuation[s]})
    out.write(dump_structure(M, names))
    out.write(f"model check of negation: {'PASS' if not satisfies(M, f) else 'FAIL'}\n")
    return EXIT_NO


def cmd_check(args, out) -> int:
    M = load_structure(_read(args.model))
    f = parse(_read(args.formula))
    for phi in dict.fromkeys(prop_formulas(f)):
        out.write(f"upper({format_prop(phi)}) = {format_rational(upper_f(M, phi))}, "
                  f"lower = {format_rational(lower(M, phi))}\n")
    if satisfies(M, f):
        out.write("HOLDS\n")
        return EXIT_YES
    out.write("FAILS\n")
    return EXIT_NO


def _verdict_report(v, verdict: UPVerdict, out) -> None:
    if verdict:
        out.write("YES\n")
        distinct = list(dict.fromkeys(verdict.witnesses.values()))
        for X, mu in verdict.witnesses.items():
            out.write(f"# {format_subset(X, v.ground)} attained by measure {distinct.index(mu)}\n")
        M = UPStructure(tuple(str(x) for x in v.ground), {}, tuple(distinct))
        out.write(dump_structure(M))
    else:
        out.write("NO\n")
        out.write(f"witness set: {format_subset(verdict.witness_set, v.ground)}\n")
        out.write(f"reason: {verdict.reason}\n")


def cmd_upcheck(args, out) -> int:
    v = load_set_function(_read(args.setfunction))
    verdict = is_upper_probability(v)
    _verdict_report(v, verdict, out)
    return EXIT_YES if verdict else EXIT_NO


def cmd_covers(args, out) -> int:
    base = Path(args.query).parent
    query = load_cover_query(_read(args.query), lambda p: load_set_function(_read(str(base / p))))
    C, A, n, k = query.cover, query.target, query.n, query.k
    ground = C.ground
    holds = is_nk_cover(C, A, n, k)
    out.write(f"({n},{k})-cover of ({format_subset(A, ground)}, {format_subset(ground, ground)}): "
              f"{'yes' if holds else 'no'}\n")
    if is_exact_nk_cover(C, A, n, k):
        out.write("exact: yes\n")
        split = decompose(C, A, n, k)
        if split is None:
            out.write("decomposable: no\n")
        else:
            parts = [
                f"{{{{{', '.join(format_subset(m, ground) for m in part.members)}}}}} as ({nk[0]},{nk[1]})"
                for part, nk in ((split.first, split.first_nk), (split.second, split.second_nk))
            ]
            out.write(f"decomposable: yes, {parts[0]} + {parts[1]}\n")
    else:
        out.write("exact: no\n")
    if holds and query.set_function is not None:
        ok = up3_holds(query.set_function, A, C, n, k)
        out.write(f"UP3: {'holds' if ok else 'violated'}\n")
        holds = ok
    return EXIT_YES if holds else EXIT_NO


def demo_prop22(args, out) -> int:
    eps = Fraction(args.eps)
    v = make_upsilon_epsilon(eps)
    out.write(f"four-measure envelope raised by {format_rational(eps)} at [a, b, c]\n")
    bad6 = property_counterexample(6, v)
    out.write(f"property (6) on all disjoint pairs: {'holds' if bad6 is None else 'fails'}\n")
    verdict = is_upper_probability(v)
    out.write("upper probability: ")
    _verdict_report(v, verdict, out)
    violation = find_up3_violation(v, max_members=min(args.max_members, 3))
    if violation is not None:
        members = ", ".join(format_subset(m, v.ground) for m in violation.cover.members)
        out.write(f"violated cover: {{{{{members}}}}} as ({violation.n},{violation.k})-cover of "
                  f"{format_subset(violation.target, v.ground)}\n")
    reproduced = bad6 is None and not verdict and verdict.witness_set == frozenset("abc")
    return EXIT_YES if reproduced else EXIT_NO


def demo_marble(args, out) -> int:
    M = marble_structure()
    out.write(dump_structure(M, ["red", "blue", "yellow"]))
    f = parse("l(red) = 3/10 & l(blue) = 7/10 & l(yellow) = 7/10")
    for name in ("red", "blue", "yellow"):
        phi = parse_prop(name)
        out.write(f"{name}: upper {format_rational(upper_f(M, phi))}, lower {format_rational(lower(M, phi))}\n")
    ok = satisfies(M, f)
    out.write(f"{format_formula(f)}: {'HOLDS' if ok else 'FAILS'}\n")
    return EXIT_YES if ok else EXIT_NO


def demo_axioms(args, out) -> int:
    report = soundness_suite(seed=args.seed)
    out.write(report.render() + "\n")
    negative = parse("l(p) + l(~p) >= 3/2")
    M = countermodel(negative)
    out.write(f"negative control {format_formula(negative)}: {'INVALID' if M else 'VALID'}\n")
    if M is not None:
        out.write(dump_structure(M, ["p"]))
    return EXIT_YES if not report.failures and M is not None else EXIT_NO


DEMOS = {"prop22": demo_prop22, "marble": demo_marble, "axioms": demo_axioms}


def cmd_demo(args, out) -> int:
    return DEMOS[args.name](args, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uplogic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--max-props", type=_positive, default=MAX_PROPS,
                        help="cap on propositions per formula (default %(default)s)")
    parser.add_argument("--max-members", type=_positive, default=MAX_MEMBERS,
                        help="cap on cover size in searches (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sat", help="decide satisfiability, printing a witness model")
    p.add_argument("formula")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("valid", help="decide validity, printing a countermodel")
    p.add_argument("formula")
    p.set_defaults(func=cmd_valid)

    p = sub.add_parser("check", help="model-check a formula in a structure")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("upcheck", help="decide whether a set function is an upper probability")
    p.add_argument("setfunction")
    p.set_defaults(func=cmd_upcheck)

    p = sub.add_parser("covers", help="inspect an (n,k)-cover query")
    p.add_argument("query")
    p.set_defaults(func=cmd_covers)

    p = sub.add_parser("demo", help="built-in worked examples")
    p.add_argument("name", choices=sorted(DEMOS))
    p.add_argument("--eps", default="1/16", help="perturbation for prop22 (default %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="seed for the axioms demo")
    p.set_defaults(func=cmd_demo)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args, out)
    except (UsageError, ParseError, StructureError, CoverError, PropLimitError,
            UnknownPropositionError, ResourceLimitError, ValueError, ZeroDivisionError) as exc:
        err.write(f"uplogic: error: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
