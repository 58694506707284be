"""Derivation checking for the Hilbert systems BF and TF.

BF has the axiom schemes A1 (instances of propositional Goedel tautologies),
A2 (``B{a} phi & B{a}(phi -> psi) -> B{a} psi``) and A3
(``~~B{a} ~~phi -> ~~B{a} phi``) with modus ponens and necessitation.
TF adds A4 (``B{a} phi -> phi``).

A1 lines are checked by abstracting every atom and every maximal modal
subformula to a fresh variable and deciding the result on a finite Goedel
chain.  Necessitation is only accepted on lines that do not depend on
premises.

Derivation files are line oriented::

    1. B{a} p & B{a}(p -> q) -> B{a} q ; A2
    2. (B{a} p & B{a}(p -> q) -> B{a} q) -> (B{a} p -> B{a}(p -> q) -> B{a} q) ; A1
    3. B{a} p -> B{a}(p -> q) -> B{a} q ; MP 1 2

``MP i j`` needs line ``j`` to be ``line i -> current``; ``Nec i a`` needs the
current line to be ``B{a}`` applied to line ``i``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import abstract_modalities, chain_tautology
from .evaluation import Evaluator
from .formula import (
    Atom,
    Believes,
    Bottom,
    Formula,
    Implies,
    ParseError,
    conjoin,
    is_epistemic,
    neg,
    parse_formula,
    print_formula,
)
from .model import KripkeModel

__all__ = [
    "System",
    "Axiom",
    "Premise",
    "MP",
    "Nec",
    "Line",
    "Derivation",
    "Verdict",
    "DerivationSyntaxError",
    "SCHEMES",
    "match_scheme",
    "parse_derivation",
    "format_derivation",
    "check_derivation",
    "soundness_crosscheck",
    "SoundnessReport",
    "certifies_inconsistency",
]


class System(enum.Enum):
    BF = "BF"
    TF = "TF"

    def axioms(self) -> frozenset[str]:
        return frozenset({"A1", "A2", "A3", "A4"} if self is System.TF else {"A1", "A2", "A3"})


@dataclass(frozen=True)
class Axiom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Premise:
    def __str__(self) -> str:
        return "premise"


@dataclass(frozen=True)
class MP:
    minor: int  # line holding phi
    major: int  # line holding phi -> psi

    def __str__(self) -> str:
        return f"MP {self.minor} {self.major}"


@dataclass(frozen=True)
class Nec:
    line: int
    agent: str

    def __str__(self) -> str:
        return f"Nec {self.line} {self.agent}"


Justification = Axiom | Premise | MP | Nec


@dataclass(frozen=True)
class Line:
    number: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    system: System
    lines: tuple[Line, ...]

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    line: int | None = None
    reason: str = ""
    counter_valuation: Mapping[str, Fraction] | None = None

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "accepted"
        return f"rejected at line {self.line}: {self.reason}"


# --------------------------------------------------------------------------
# schemes

_FORMULA_META = frozenset({"phi", "psi"})
_AGENT_META = frozenset({"a"})

SCHEMES: dict[str, Formula] = {
    "A2": parse_formula("B{a} phi & B{a}(phi -> psi) -> B{a} psi"),
    "A3": parse_formula("~~B{a} ~~phi -> ~~B{a} phi"),
    "A4": parse_formula("B{a} phi -> phi"),
}


def match_scheme(pattern: Formula, f: Formula) -> dict[str, object] | None:
    """Unify ``f`` against a scheme whose atoms ``phi``/``psi`` and agent ``a``
    are metavariables.  Returns the binding or ``None``."""
    binding: dict[str, object] = {}

    def bind(key: str, value: object) -> bool:
        if key in binding:
            return binding[key] == value
        binding[key] = value
        return True

    def go(p: Formula, g: Formula) -> bool:
        if isinstance(p, Atom) and p.name in _FORMULA_META:
            return bind(p.name, g)
        if type(p) is not type(g):
            return False
        if isinstance(p, Atom):
            return p == g
        if isinstance(p, Bottom):
            return True
        if isinstance(p, Believes):
            agent_ok = bind("@" + p.agent, g.agent) if p.agent in _AGENT_META else p.agent == g.agent
            return agent_ok and go(p.body, g.body)
        if hasattr(p, "left"):
            return go(p.left, g.left) and go(p.right, g.right)
        return False

    if not go(pattern, f):
        return None
    return {k.lstrip("@"): v for k, v in binding.items()}


# --------------------------------------------------------------------------
# parsing


class DerivationSyntaxError(ValueError):
    def __init__(self, message: str, lineno: int) -> None:
        self.lineno = lineno
        super().__init__(f"derivation file line {lineno}: {message}")


_LINE = re.compile(r"^\s*(\d+)\s*\.\s*(.*?)\s*;\s*(.*?)\s*$")


def _parse_justification(text: str, lineno: int) -> Justification:
    parts = text.split()
    if len(parts) == 1 and parts[0] in ("A1", "A2", "A3", "A4"):
        return Axiom(parts[0])
    if len(parts) == 1 and parts[0].lower() == "premise":
        return Premise()
    if len(parts) == 3 and parts[0] == "MP" and parts[1].isdigit() and parts[2].isdigit():
        return MP(int(parts[1]), int(parts[2]))
    if len(parts) == 3 and parts[0] == "Nec" and parts[1].isdigit():
        return Nec(int(parts[1]), parts[2])
    raise DerivationSyntaxError(f"bad justification {text!r}", lineno)


def parse_derivation(text: str, system: System | str = System.BF) -> Derivation:
    """Read ``n. <formula> ; <justification>`` lines; ``#`` starts a comment."""
    system = System(system)
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _LINE.match(stripped)
        if m is None:
            raise DerivationSyntaxError("expected 'n. <formula> ; <justification>'", lineno)
        try:
            f = parse_formula(m.group(2))
        except ParseError as exc:
            raise DerivationSyntaxError(str(exc), lineno) from None
        lines.append(Line(int(m.group(1)), f, _parse_justification(m.group(3), lineno)))
    return Derivation(system, tuple(lines))


def format_derivation(d: Derivation) -> str:
    return "\n".join(
        f"{ln.number}. {print_formula(ln.formula)} ; {ln.justification}" for ln in d.lines
    ) + "\n"


# --------------------------------------------------------------------------
# checking


def check_derivation(d: Derivation, premises: Iterable[Formula] = ()) -> Verdict:
    """Accept iff every line is justified; otherwise report the first bad line."""
    premises = set(premises)
    seen: dict[int, Formula] = {}
    uses_premise: dict[int, bool] = {}
    allowed = d.system.axioms()
    last = 0

    for ln in d.lines:
        n, f, just = ln.number, ln.formula, ln.justification

        def reject(reason: str, cv: Mapping[str, Fraction] | None = None) -> Verdict:
            return Verdict(False, n, reason, cv)

        if n <= last:
            return reject(f"line number {n} does not increase")
        last = n
        if not is_epistemic(f):
            return reject("formula uses connectives outside the B-language (E, C, updates or G-atoms)")

        if isinstance(just, Axiom):
            if just.name not in allowed:
                return reject(f"{just.name} is not an axiom of {d.system.value}")
            if just.name == "A1":
                template, _ = abstract_modalities(f)
                result = chain_tautology(template)
                if not result:
                    cv = {k: v for k, v in result.counter_valuation.items()}
                    shown = ", ".join(f"{k}={v}" for k, v in cv.items())
                    return reject(
                        f"propositional skeleton {print_formula(template)} is not a Goedel "
                        f"tautology (value {result.value} at {shown})",
                        cv,
                    )
            elif match_scheme(SCHEMES[just.name], f) is None:
                return reject(f"not an instance of {just.name}")
            dep = False
        elif isinstance(just, Premise):
            if f not in premises:
                return reject("not among the premises")
            dep = True
        elif isinstance(just, MP):
            for ref in (just.minor, just.major):
                if ref not in seen:
                    return reject(f"MP refers to line {ref}, which is not an earlier line")
            expected = seen[just.major]
            if not (
                isinstance(expected, Implies)
                and expected.left == seen[just.minor]
                and expected.right == f
            ):
                return reject(f"line {just.major} is not 'line {just.minor} -> this line'")
            dep = uses_premise[just.minor] or uses_premise[just.major]
        elif isinstance(just, Nec):
            if just.line not in seen:
                return reject(f"Nec refers to line {just.line}, which is not an earlier line")
            if uses_premise[just.line]:
                return reject(f"Nec applied to line {just.line}, which depends on premises")
            if f != Believes(just.agent, seen[just.line]):
                return reject(f"not B{{{just.agent}}} applied to line {just.line}")
            dep = False
        else:  # pragma: no cover
            return reject(f"unknown justification {just!r}")

        seen[n] = f
        uses_premise[n] = dep

    return Verdict(True)


def certifies_inconsistency(d: Derivation, formulas: Sequence[Formula]) -> bool:
    """True if ``d`` is an accepted premise-free proof of ``~(f1 & ... & fn)``."""
    if not formulas or not check_derivation(d):
        return False
    return d.conclusion == neg(conjoin(formulas))


# --------------------------------------------------------------------------
# soundness cross-check


@dataclass
class SoundnessReport:
    checked: int = 0
    violations: list[tuple[int, int, str, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def soundness_crosscheck(d: Derivation, models: Iterable[KripkeModel]) -> SoundnessReport:
    """Evaluate every line at every state of every model.

    Each violation is ``(line number, model index, state, value)``.
    """
    report = SoundnessReport()
    for k, m in enumerate(models):
        ev = Evaluator(m)
        for ln in d.lines:
            for s, v in ev.degrees(ln.formula).items():
                report.checked += 1
                if v != 1:
                    report.violations.append((ln.number, k, s, v))
    return report
