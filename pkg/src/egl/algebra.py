"""Goedel truth-value algebra on [0, 1] and a finite-chain tautology test.

The connective functions take an optional ``top`` so the evaluator can run
them on integers scaled by a common denominator; with the default ``top=1``
they act on :class:`fractions.Fraction` truth values directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .formula import (
    And,
    Atom,
    Bottom,
    Formula,
    Iff,
    Implies,
    Or,
    subformulas,
)

__all__ = [
    "g_and",
    "g_or",
    "g_implies",
    "g_not",
    "g_iff",
    "NotPropositional",
    "TautologyResult",
    "evaluate_prop",
    "chain",
    "chain_tautology",
    "abstract_modalities",
]


def g_and(x, y):
    return min(x, y)


def g_or(x, y):
    return max(x, y)


def g_implies(x, y, top=1):
    return top if x <= y else y


def g_not(x, top=1):
    return top if x == 0 else 0


def g_iff(x, y, top=1):
    return min(g_implies(x, y, top), g_implies(y, x, top))


class NotPropositional(ValueError):
    pass


_PROP_NODES = (Atom, Bottom, And, Or, Implies, Iff)


def _check_propositional(f: Formula) -> None:
    for g in subformulas(f):
        if not isinstance(g, _PROP_NODES):
            raise NotPropositional(f"not propositional: contains {type(g).__name__}")


def evaluate_prop(f: Formula, assignment: Mapping[str, Fraction]) -> Fraction:
    """Value of a propositional formula under ``assignment``."""
    if isinstance(f, Atom):
        return assignment[f.name]
    if isinstance(f, Bottom):
        return Fraction(0)
    if isinstance(f, And):
        return g_and(evaluate_prop(f.left, assignment), evaluate_prop(f.right, assignment))
    if isinstance(f, Or):
        return g_or(evaluate_prop(f.left, assignment), evaluate_prop(f.right, assignment))
    if isinstance(f, Implies):
        return g_implies(evaluate_prop(f.left, assignment), evaluate_prop(f.right, assignment))
    if isinstance(f, Iff):
        return g_iff(evaluate_prop(f.left, assignment), evaluate_prop(f.right, assignment))
    raise NotPropositional(f"not propositional: {type(f).__name__}")


def chain(size: int) -> list[Fraction]:
    """The Goedel chain ``{0, 1/(size-1), ..., 1}``."""
    return [Fraction(i, size - 1) for i in range(size)]


@dataclass(frozen=True)
class TautologyResult:
    tautology: bool
    counter_valuation: dict[str, Fraction] | None = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.tautology


def chain_tautology(f: Formula, extra: int = 0) -> TautologyResult:
    """Decide whether ``f`` is a propositional Goedel tautology.

    Goedel semantics only sees the relative order of atom values and the
    endpoints, so with ``n`` atoms the ``n + 2`` element chain realises every
    order type.  Assignments are enumerated in lexicographic order over the
    sorted atom names; the first one with value below 1 is returned.
    ``extra`` enlarges the chain (used to cross-check against denser chains).
    """
    _check_propositional(f)
    names = sorted({g.name for g in subformulas(f) if isinstance(g, Atom)})
    values = chain(len(names) + 2 + extra)
    for combo in itertools.product(values, repeat=len(names)):
        assignment = dict(zip(names, combo))
        v = evaluate_prop(f, assignment)
        if v != 1:
            return TautologyResult(False, assignment, v)
    return TautologyResult(True)


def abstract_modalities(f: Formula) -> tuple[Formula, dict[str, Formula]]:
    """Replace atoms and maximal non-propositional subformulas by variables.

    Syntactically identical pieces share a variable.  Variables are named
    ``x0, x1, ...`` in order of first occurrence (left to right).
    """
    table: dict[Formula, str] = {}

    def var(g: Formula) -> Formula:
        if g not in table:
            table[g] = f"x{len(table)}"
        return Atom(table[g])

    def go(g: Formula) -> Formula:
        if isinstance(g, Bottom):
            return g
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left), go(g.right))
        return var(g)

    result = go(f)
    return result, {name: g for g, name in table.items()}
