"""The likelihood language: terms, basic formulas, Boolean combinations.

Formulas are parsed into a small canonical AST in which every basic
formula is ``t >= a`` or ``t > a``; ``<=``, ``<`` and ``=`` are rewritten
on the way in::

    t <= a   ->  -t >= -a
    t <  a   ->  ~(t >= a)
    t =  a   ->  (t >= a) & (-t >= -a)

Coefficients and bounds are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from . import prop
from .prop import Const, Iff, Implies, Not, Prim, PropFormula

REL_GE = ">="
REL_GT = ">"


@dataclass(frozen=True)
class Term:
    """``c_1 l(phi_1) + ... + c_k l(phi_k)`` with ``k >= 1``."""

    addends: tuple[tuple[Fraction, PropFormula], ...]

    def __post_init__(self):
        if not self.addends:
            raise ValueError("a term needs at least one addend")

    @classmethod
    def of(cls, *pairs) -> "Term":
        return cls(tuple((Fraction(c), phi) for c, phi in pairs))

    def __neg__(self) -> "Term":
        return Term(tuple((-c, phi) for c, phi in self.addends))

    @property
    def formulas(self) -> list[PropFormula]:
        return [phi for _, phi in self.addends]


@dataclass(frozen=True)
class BasicL:
    term: Term
    rel: str
    bound: Fraction

    def __post_init__(self):
        if self.rel not in (REL_GE, REL_GT):
            raise ValueError(f"canonical relation must be >= or >, got {self.rel!r}")


@dataclass(frozen=True)
class LNot:
    child: "LFormula"


@dataclass(frozen=True)
class LAnd:
    left: "LFormula"
    right: "LFormula"


@dataclass(frozen=True)
class LOr:
    left: "LFormula"
    right: "LFormula"


LFormula = Union[BasicL, LNot, LAnd, LOr]


# -- construction helpers ----------------------------------------------------

def ge(term: Term, bound) -> BasicL:
    return BasicL(term, REL_GE, Fraction(bound))


def gt(term: Term, bound) -> BasicL:
    return BasicL(term, REL_GT, Fraction(bound))


def le(term: Term, bound) -> BasicL:
    return BasicL(-term, REL_GE, -Fraction(bound))


def lt(term: Term, bound) -> LFormula:
    return LNot(ge(term, bound))


def eq(term: Term, bound) -> LFormula:
    return LAnd(ge(term, bound), le(term, bound))


def land(*fs: LFormula) -> LFormula:
    out = fs[0]
    for f in fs[1:]:
        out = LAnd(out, f)
    return out


def lor(*fs: LFormula) -> LFormula:
    out = fs[0]
    for f in fs[1:]:
        out = LOr(out, f)
    return out


def leaves(f: LFormula) -> Iterator[BasicL]:
    if isinstance(f, BasicL):
        yield f
    elif isinstance(f, LNot):
        yield from leaves(f.child)
    else:
        yield from leaves(f.left)
        yield from leaves(f.right)


def prop_formulas(f: LFormula) -> list[PropFormula]:
    return [phi for leaf in leaves(f) for phi in leaf.term.formulas]


def props(f: LFormula) -> list[str]:
    return prop.joint_vars(prop_formulas(f))


# -- lexer ---------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.column = line, col


_UNICODE = {"¬": "~", "∧": "&", "∨": "|", "⇒": "=>", "→": "=>", "⇔": "<=>",
            "↔": "<=>", "≥": ">=", "≤": "<=", "−": "-"}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><=>|=>|>=|<=|[()~&|<>=+\-/*¬∧∨⇒→⇔↔≥≤−]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        if m.lastgroup == "op":
            value = _UNICODE.get(value, value)
        toks.append(_Tok(m.lastgroup, value, start))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok.pos)

    def accept(self, *ops: str) -> str | None:
        if self.tok.kind == "op" and self.tok.text in ops:
            self.i += 1
            return self.toks[self.i - 1].text
        return None

    def expect(self, op: str):
        if not self.accept(op):
            found = self.tok.text or "end of input"
            self.error(f"expected {op!r}, found {found!r}")

    def done(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")

    # propositional level

    def p_iff(self) -> PropFormula:
        out = self.p_imp()
        while self.accept("<=>"):
            out = Iff(out, self.p_imp())
        return out

    def p_imp(self) -> PropFormula:
        left = self.p_or()
        if self.accept("=>"):
            return Implies(left, self.p_imp())
        return left

    def p_or(self) -> PropFormula:
        out = self.p_and()
        while self.accept("|"):
            out = prop.Or(out, self.p_and())
        return out

    def p_and(self) -> PropFormula:
        out = self.p_not()
        while self.accept("&"):
            out = prop.And(out, self.p_not())
        return out

    def p_not(self) -> PropFormula:
        if self.accept("~"):
            return Not(self.p_not())
        if self.accept("("):
            inner = self.p_iff()
            self.expect(")")
            return inner
        tok = self.tok
        if tok.kind != "ident":
            self.error(f"expected a proposition, found {tok.text or 'end of input'!r}")
        self.i += 1
        if tok.text == "true":
            return prop.TRUE
        if tok.text == "false":
            return prop.FALSE
        return Prim(tok.text)

    # likelihood level

    def l_or(self) -> LFormula:
        out = self.l_and()
        while self.accept("|"):
            out = LOr(out, self.l_and())
        return out

    def l_and(self) -> LFormula:
        out = self.l_unary()
        while self.accept("&"):
            out = LAnd(out, self.l_unary())
        return out

    def l_unary(self) -> LFormula:
        if self.accept("~"):
            return LNot(self.l_unary())
        if self.accept("("):
            inner = self.l_or()
            self.expect(")")
            return inner
        return self.basic()

    def rat(self) -> Fraction:
        tok = self.tok
        if tok.kind != "num":
            self.error(f"expected a number, found {tok.text or 'end of input'!r}")
        self.i += 1
        value = Fraction(tok.text)
        if self.accept("/"):
            den_tok = self.tok
            if den_tok.kind != "num" or "." in den_tok.text:
                self.error("expected an integer denominator")
            self.i += 1
            if int(den_tok.text) == 0:
                self.error("zero denominator", den_tok)
            value /= int(den_tok.text)
        return value

    def at_likelihood(self) -> bool:
        return self.tok.kind == "ident" and self.tok.text == "l" and self.peek().text == "("

    def expr(self):
        """Signed sum of ``c l(phi)`` addends and constants."""
        addends: list[tuple[Fraction, PropFormula]] = []
        const = Fraction(0)
        first = True
        while True:
            sign = self.accept("+", "-")
            if sign is None and not first:
                break
            first = False
            factor = Fraction(-1 if sign == "-" else 1)
            start = self.tok
            if self.tok.kind == "num":
                factor *= self.rat()
                self.accept("*")
                if not self.at_likelihood():
                    const += factor
                    continue
            if not self.at_likelihood():
                self.error(f"expected a coefficient or l(...), found {start.text or 'end of input'!r}", start)
            self.i += 2
            phi = self.p_iff()
            self.expect(")")
            addends.append((factor, phi))
        return addends, const

    def basic(self) -> LFormula:
        start = self.tok
        lhs, lconst = self.expr()
        rel = self.accept(">=", "<=", ">", "<", "=")
        if rel is None:
            self.error(f"expected a relation, found {self.tok.text or 'end of input'!r}")
        rhs, rconst = self.expr()
        addends = lhs + [(-c, phi) for c, phi in rhs]
        if not addends:
            self.error("a basic formula needs at least one l(...) term", start)
        term = Term(tuple(addends))
        bound = rconst - lconst
        if rel == ">=":
            return ge(term, bound)
        if rel == ">":
            return gt(term, bound)
        if rel == "<=":
            return le(term, bound)
        if rel == "<":
            return lt(term, bound)
        return eq(term, bound)


def parse(text: str) -> LFormula:
    """Parse a likelihood formula. ``#`` starts a comment running to end of line."""
    text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    p = _Parser(text)
    if p.tok.kind == "eof":
        raise ParseError("empty formula", text, 0)
    f = p.l_or()
    p.done()
    return f


def parse_prop(text: str) -> PropFormula:
    p = _Parser(text)
    phi = p.p_iff()
    p.done()
    return phi


# -- printing ------------------------------------------------------------------

def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_PREC = {Iff: 1, Implies: 2, prop.Or: 3, prop.And: 4, Not: 5, Prim: 6, Const: 6}
_SYM = {Iff: "<=>", Implies: "=>", prop.Or: "|", prop.And: "&"}


def format_prop(phi: PropFormula, min_prec: int = 0) -> str:
    kind = type(phi)
    prec = _PREC[kind]
    if isinstance(phi, Prim):
        text = phi.name
    elif isinstance(phi, Const):
        text = "true" if phi.value else "false"
    elif isinstance(phi, Not):
        text = "~" + format_prop(phi.child, prec)
    else:
        # & | <=> associate left, => associates right
        lp, rp = (prec + 1, prec) if kind is Implies else (prec, prec + 1)
        text = f"{format_prop(phi.left, lp)} {_SYM[kind]} {format_prop(phi.right, rp)}"
    return f"({text})" if prec < min_prec else text


def format_term(term: Term) -> str:
    parts = []
    for idx, (c, phi) in enumerate(term.addends):
        body = f"l({format_prop(phi)})"
        if idx == 0:
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_rational(c)} {body}")
        else:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign} {body}" if mag == 1 else f"{sign} {format_rational(mag)} {body}")
    return " ".join(parts)


def format_formula(f: LFormula, min_prec: int = 0) -> str:
    if isinstance(f, BasicL):
        return f"{format_term(f.term)} {f.rel} {format_rational(f.bound)}"
    if isinstance(f, LNot):
        child = format_formula(f.child)
        return "~" + child if isinstance(f.child, LNot) else f"~({child})"
    prec = 1 if isinstance(f, LOr) else 2
    sym = "|" if isinstance(f, LOr) else "&"
    text = f"{format_formula(f.left, prec)} {sym} {format_formula(f.right, prec + 1)}"
    return f"({text})" if prec < min_prec else text


# -- size measures -------------------------------------------------------------

def prop_length(phi: PropFormula) -> int:
    if isinstance(phi, (Prim, Const)):
        return 1
    if isinstance(phi, Not):
        return 1 + prop_length(phi.child)
    return 1 + prop_length(phi.left) + prop_length(phi.right)


def length(f: LFormula) -> int:
    """Symbol count of ``f``.

    Per basic formula: one symbol per coefficient (implicit 1s included),
    the symbols of each ``l(phi)`` argument (the ``l(...)`` wrapper itself is
    folded into its argument), one per ``+``/``-`` separator, one for the
    relation and one for the bound.  Each Boolean connective adds one.
    """
    if isinstance(f, BasicL):
        k = len(f.term.addends)
        return sum(1 + prop_length(phi) for _, phi in f.term.addends) + (k - 1) + 2
    if isinstance(f, LNot):
        return 1 + length(f.child)
    return 1 + length(f.left) + length(f.right)


def rational_bits(q: Fraction) -> int:
    q = Fraction(q)
    return max(1, abs(q.numerator).bit_length()) + q.denominator.bit_length()


def coeff_size(f: LFormula) -> int:
    """Longest coefficient or bound in binary: ``bits(|a|) + bits(b)`` for ``a/b``."""
    sizes = [rational_bits(leaf.bound) for leaf in leaves(f)]
    sizes += [rational_bits(c) for leaf in leaves(f) for c, _ in leaf.term.addends]
    return max(sizes)


def substitute(f: LFormula, mapping: dict[str, PropFormula]) -> LFormula:
    """Replace primitive propositions inside every ``l(...)`` argument."""

    def sub_prop(phi):
        if isinstance(phi, Prim):
            return mapping.get(phi.name, phi)
        if isinstance(phi, Const):
            return phi
        if isinstance(phi, Not):
            return Not(sub_prop(phi.child))
        return type(phi)(sub_prop(phi.left), sub_prop(phi.right))

    if isinstance(f, BasicL):
        term = Term(tuple((c, sub_prop(phi)) for c, phi in f.term.addends))
        return BasicL(term, f.rel, f.bound)
    if isinstance(f, LNot):
        return LNot(substitute(f.child, mapping))
    return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))

