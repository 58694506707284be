"""Formula syntax for epistemic Goedel logic and its extensions.

The AST covers the static language (atoms, falsum, conjunction, implication,
belief), the group operators ``E`` and ``C``, update modalities ``[A,e]`` and
the crisp G-atoms ``G(psi) = g`` / ``G(psi) > g`` used in action-model
preconditions.

Concrete syntax (loosest to tightest binding)::

    formula  ::= iff
    iff      ::= imp ("<->" imp)*                      left-assoc
    imp      ::= or ("->" imp)?                        right-assoc
    or       ::= and ("|" and)*
    and      ::= unary ("&" unary)*
    unary    ::= "~" unary | "B{" agent "}" unary | "E{" agents "}" unary
               | "C{" agents "}" unary | "[" ident "," ident "]" unary | atom
    atom     ::= "false" | ident | gatom | "(" formula ")"
    gatom    ::= "G(" psi ")" ("=" | ">" | ">=" | "<=" | "<") number
    number   ::= decimal | int "/" int

Negation is sugar: ``~x`` is ``x -> false``.  Disjunction and the
biconditional are kept as nodes; they evaluate to max and to the meet of the
two implications, which is what their Goedel-logic definitions compute.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

__all__ = [
    "Formula",
    "Atom",
    "Bottom",
    "BOTTOM",
    "TOP",
    "And",
    "Or",
    "Implies",
    "Iff",
    "Believes",
    "Everyone",
    "Common",
    "Update",
    "GEq",
    "GGt",
    "ParseError",
    "neg",
    "g_ge",
    "g_le",
    "g_lt",
    "conjoin",
    "everyone_power",
    "parse_formula",
    "parse_gformula",
    "print_formula",
    "format_rational",
    "parse_rational",
    "atoms",
    "agents",
    "subformulas",
    "depth",
    "substitute",
    "is_update_free",
    "is_gformula",
    "is_epistemic",
]


class Formula:
    """Base class of all AST nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Believes(Formula):
    agent: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Everyone(Formula):
    group: frozenset[str]
    body: Formula

    def __post_init__(self) -> None:
        object.__setattr__(self, "group", frozenset(self.group))
        if not self.group:
            raise ValueError("E needs a non-empty agent set")


@dataclass(frozen=True, slots=True)
class Common(Formula):
    group: frozenset[str]
    body: Formula

    def __post_init__(self) -> None:
        object.__setattr__(self, "group", frozenset(self.group))
        if not self.group:
            raise ValueError("C needs a non-empty agent set")


@dataclass(frozen=True, slots=True)
class Update(Formula):
    """``[action, event] body``; the action model is resolved by name."""

    action: str
    event: str
    body: Formula


@dataclass(frozen=True, slots=True)
class GEq(Formula):
    body: Formula
    threshold: Fraction


@dataclass(frozen=True, slots=True)
class GGt(Formula):
    body: Formula
    threshold: Fraction


BOTTOM = Bottom()
TOP = Implies(BOTTOM, BOTTOM)


def neg(f: Formula) -> Formula:
    return Implies(f, BOTTOM)


def g_ge(f: Formula, g: Fraction) -> Formula:
    return Or(GEq(f, g), GGt(f, g))


def g_le(f: Formula, g: Fraction) -> Formula:
    return neg(GGt(f, g))


def g_lt(f: Formula, g: Fraction) -> Formula:
    return neg(g_ge(f, g))


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``~false``."""
    result: Formula | None = None
    for part in parts:
        result = part if result is None else And(result, part)
    return TOP if result is None else result


def everyone_power(group: Iterable[str], f: Formula, n: int) -> Formula:
    """``E{group}`` applied ``n`` times to ``f``."""
    group = frozenset(group)
    for _ in range(n):
        f = Everyone(group, f)
    return f


# --------------------------------------------------------------------------
# rationals


def parse_rational(text: str | int | float | Fraction) -> Fraction:
    """Exact rational from ``"19/100"``, ``"0.19"``, an int or a float literal.

    Floats go through their shortest repr, so ``0.19`` becomes ``19/100``.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a number: {text!r}")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(repr(text))
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not an exact number: {text!r}") from None
    raise ValueError(f"not a number: {text!r}")


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# lexer


class ParseError(ValueError):
    """Syntax error; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, text: str, pos: int) -> None:
        self.offset = len(text[:pos].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op><->|->|>=|<=|[=<>|&~(){}\[\],/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, self.text, tok.pos)

    def accept(self, value: str) -> bool:
        if self.tok.kind in ("op", "ident") and self.tok.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> _Tok:
        tok = self.tok
        if not self.accept(value):
            found = tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        return tok

    def ident(self, what: str) -> str:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected {what}")
        self.i += 1
        return tok.value

    def finish(self) -> None:
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.value!r}")

    # shared binary layers; `unary` selects the formula or G-formula level
    def iff(self, unary: Callable[[], Formula]) -> Formula:
        left = self.imp(unary)
        while self.accept("<->"):
            left = Iff(left, self.imp(unary))
        return left

    def imp(self, unary: Callable[[], Formula]) -> Formula:
        left = self.disj(unary)
        if self.accept("->"):
            return Implies(left, self.imp(unary))
        return left

    def disj(self, unary: Callable[[], Formula]) -> Formula:
        left = self.conj(unary)
        while self.accept("|"):
            left = Or(left, self.conj(unary))
        return left

    def conj(self, unary: Callable[[], Formula]) -> Formula:
        left = unary()
        while self.accept("&"):
            left = And(left, unary())
        return left

    # formula level
    def formula(self) -> Formula:
        return self.iff(self.unary)

    def agent_set(self, op: str) -> frozenset[str]:
        start = self.tok
        self.expect("{")
        names = [self.ident("agent name")]
        while self.accept(","):
            names.append(self.ident("agent name"))
        if not self.accept("}"):
            raise self.error(f"malformed agent set after {op!r}", start)
        if op == "B" and len(names) != 1:
            raise self.error("B{...} takes exactly one agent", start)
        return frozenset(names)

    def unary(self) -> Formula:
        tok = self.tok
        if self.accept("~"):
            return neg(self.unary())
        if tok.kind == "ident" and tok.value in ("B", "E", "C") and self.peek().value == "{":
            self.i += 1
            group = self.agent_set(tok.value)
            body = self.unary()
            if tok.value == "B":
                return Believes(next(iter(group)), body)
            return (Everyone if tok.value == "E" else Common)(group, body)
        if self.accept("["):
            action = self.ident("action model name")
            self.expect(",")
            event = self.ident("event name")
            self.expect("]")
            return Update(action, event, self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "ident":
            if tok.value == "G" and self.peek().value == "(":
                return self.gatom()
            self.i += 1
            if tok.value == "false":
                return BOTTOM
            return Atom(tok.value)
        raise self.error(f"expected a formula, found {tok.value or 'end of input'!r}")

    # G-formula level
    def gformula(self) -> Formula:
        return self.iff(self.gunary)

    def gunary(self) -> Formula:
        tok = self.tok
        if self.accept("~"):
            return neg(self.gunary())
        if self.accept("("):
            f = self.gformula()
            self.expect(")")
            return f
        if self.accept("false"):
            return BOTTOM
        if tok.kind == "ident" and tok.value == "G" and self.peek().value == "(":
            return self.gatom()
        raise self.error("expected a G-atom, 'false' or '('")

    def gatom(self) -> Formula:
        self.expect("G")
        self.expect("(")
        start = self.tok
        psi = self.formula()
        self.expect(")")
        bad = _psi_violation(psi)
        if bad:
            raise self.error(f"{bad} inside G(...)", start)
        op_tok = self.tok
        if op_tok.value not in ("=", ">", ">=", "<=", "<"):
            raise self.error("expected one of = > >= <= < after G(...)")
        self.i += 1
        g = self.number()
        if op_tok.value == "=":
            return GEq(psi, g)
        if op_tok.value == ">":
            return GGt(psi, g)
        if op_tok.value == ">=":
            return g_ge(psi, g)
        if op_tok.value == "<=":
            return g_le(psi, g)
        return g_lt(psi, g)

    def number(self) -> Fraction:
        tok = self.tok
        if tok.kind != "num":
            raise self.error("malformed threshold")
        self.i += 1
        if self.accept("/"):
            den = self.tok
            if den.kind != "num" or "." in den.value or "." in tok.value:
                raise self.error("malformed threshold", den)
            self.i += 1
            if int(den.value) == 0:
                raise self.error("zero denominator in threshold", den)
            value = Fraction(int(tok.value), int(den.value))
        else:
            value = Fraction(tok.value)
        if not 0 <= value <= 1:
            raise self.error(f"threshold {format_rational(value)} outside [0,1]", tok)
        return value


def _psi_violation(psi: Formula) -> str | None:
    for sub in subformulas(psi):
        if isinstance(sub, Update):
            return "update operator"
        if isinstance(sub, (Everyone, Common)):
            return "group operator"
        if isinstance(sub, (GEq, GGt)):
            return "nested G-atom"
    return None


def parse_formula(text: str) -> Formula:
    """Parse a formula; G-atoms are accepted so preconditions can be embedded.

    >>> print_formula(parse_formula("B{b} m_a -> B{b} B{b} m_a"))
    'B{b} m_a -> B{b} B{b} m_a'
    """
    p = _Parser(text)
    f = p.formula()
    p.finish()
    return f


def parse_gformula(text: str) -> Formula:
    """Parse a precondition built from G-atoms, ``false``, ``&``, ``->`` and sugar."""
    p = _Parser(text)
    f = p.gformula()
    p.finish()
    return f


# --------------------------------------------------------------------------
# printer

_IFF, _IMP, _OR, _AND, _UNARY = range(5)


def _group(g: frozenset[str]) -> str:
    return ",".join(sorted(g))


def _print(f: Formula, ctx: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Implies) and isinstance(f.right, Bottom):
        inner = f.left
        # ~G(x) > g reads back as the <= sugar
        if isinstance(inner, GGt):
            return f"G({_print(inner.body, _IFF)}) <= {format_rational(inner.threshold)}"
        if _is_ge(inner):
            return f"G({_print(inner.left.body, _IFF)}) < {format_rational(inner.left.threshold)}"
        return "~" + _print(inner, _UNARY)
    if isinstance(f, Believes):
        return f"B{{{f.agent}}} " + _print(f.body, _UNARY)
    if isinstance(f, Everyone):
        return f"E{{{_group(f.group)}}} " + _print(f.body, _UNARY)
    if isinstance(f, Common):
        return f"C{{{_group(f.group)}}} " + _print(f.body, _UNARY)
    if isinstance(f, Update):
        return f"[{f.action},{f.event}] " + _print(f.body, _UNARY)
    if isinstance(f, GEq):
        return f"G({_print(f.body, _IFF)}) = {format_rational(f.threshold)}"
    if isinstance(f, GGt):
        return f"G({_print(f.body, _IFF)}) > {format_rational(f.threshold)}"
    if _is_ge(f):
        return f"G({_print(f.left.body, _IFF)}) >= {format_rational(f.left.threshold)}"
    if isinstance(f, Iff):
        prec, text = _IFF, f"{_print(f.left, _IFF)} <-> {_print(f.right, _IMP)}"
    elif isinstance(f, Implies):
        prec, text = _IMP, f"{_print(f.left, _OR)} -> {_print(f.right, _IMP)}"
    elif isinstance(f, Or):
        prec, text = _OR, f"{_print(f.left, _OR)} | {_print(f.right, _AND)}"
    elif isinstance(f, And):
        prec, text = _AND, f"{_print(f.left, _AND)} & {_print(f.right, _UNARY)}"
    else:
        raise TypeError(f"not a formula: {f!r}")
    return f"({text})" if prec < ctx else text


def _is_ge(f: Formula) -> bool:
    return (
        isinstance(f, Or)
        and isinstance(f.left, GEq)
        and isinstance(f.right, GGt)
        and f.left.body == f.right.body
        and f.left.threshold == f.right.threshold
    )


def print_formula(f: Formula) -> str:
    """Canonical text with minimal parentheses; re-parses to the same AST."""
    return _print(f, _IFF)


# --------------------------------------------------------------------------
# traversal


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or, Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, (Believes, Everyone, Common, Update, GEq, GGt)):
        return (f.body,)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, including ``f`` itself."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(_children(node)))


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def agents(f: Formula) -> set[str]:
    found: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Believes):
            found.add(g.agent)
        elif isinstance(g, (Everyone, Common)):
            found |= g.group
    return found


def depth(f: Formula) -> int:
    kids = _children(f)
    return 0 if not kids else 1 + max(depth(k) for k in kids)


def substitute(
    f: Formula,
    formulas: Mapping[str, Formula] | None = None,
    agent_map: Mapping[str, str] | None = None,
) -> Formula:
    """Uniformly replace atoms by formulas and rename agents."""
    formulas = formulas or {}
    agent_map = agent_map or {}

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return formulas.get(g.name, g)
        if isinstance(g, Bottom):
            return g
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, Believes):
            return Believes(agent_map.get(g.agent, g.agent), go(g.body))
        if isinstance(g, (Everyone, Common)):
            return type(g)(frozenset(agent_map.get(a, a) for a in g.group), go(g.body))
        if isinstance(g, Update):
            return Update(g.action, g.event, go(g.body))
        if isinstance(g, (GEq, GGt)):
            return type(g)(go(g.body), g.threshold)
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def is_update_free(f: Formula) -> bool:
    return not any(isinstance(g, Update) for g in subformulas(f))


def is_epistemic(f: Formula) -> bool:
    """True for formulas of the basic language: atoms, falsum, connectives, B."""
    return all(
        isinstance(g, (Atom, Bottom, And, Or, Implies, Iff, Believes))
        for g in subformulas(f)
    )


def is_gformula(f: Formula) -> bool:
    """True if ``f`` is built from G-atoms over update-free psi with crisp connectives."""
    if isinstance(f, (GEq, GGt)):
        return 0 <= f.threshold <= 1 and _psi_violation(f.body) is None
    if isinstance(f, Bottom):
        return True
    if isinstance(f, (And, Or, Implies, Iff)):
        return is_gformula(f.left) and is_gformula(f.right)
    return False
