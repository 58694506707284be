"""Action models, product update and evaluation of ``[A,e]`` modalities.

Update formulas name their action model (``[ann,e1] phi``); evaluation takes
a registry mapping those names to :class:`ActionModel` instances.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .evaluation import EvaluationError, Evaluator, Vector, model_scale
from .formula import (
    And,
    Atom,
    BOTTOM,
    Formula,
    GEq,
    GGt,
    Implies,
    Believes,
    Or,
    ParseError,
    format_rational,
    is_gformula,
    neg,
    parse_gformula,
    parse_rational,
    print_formula,
    subformulas,
    Update,
    agents as formula_agents,
    atoms as formula_atoms,
)
from .model import KripkeModel, ModelError

__all__ = [
    "ActionModel",
    "ProductModel",
    "UpdateEvaluator",
    "eval_gformula",
    "product_update",
    "eval_update",
    "evaluate",
    "degree_vector",
    "load_action",
    "save_action",
    "action_to_dict",
    "action_from_dict",
    "random_action_model",
    "random_gformula",
]

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class ActionModel:
    """``u_a(e, e') `` per agent plus a crisp precondition per event.

    Agents without a table distinguish all events: 1 on the diagonal, 0 off it.
    """

    events: tuple[str, ...]
    indist: Mapping[str, Mapping[tuple[str, str], Fraction]]
    pre: Mapping[str, Formula]
    name: str = "A"

    def __post_init__(self) -> None:
        if not self.events:
            raise ValueError("an action model needs at least one event")
        if len(set(self.events)) != len(self.events):
            raise ValueError("duplicate event names")
        missing = [e for e in self.events if e not in self.pre]
        if missing:
            raise ValueError(f"no precondition for event(s) {', '.join(missing)}")
        for e, g in self.pre.items():
            if e not in self.events:
                raise ValueError(f"precondition for unknown event {e!r}")
            if not is_gformula(g):
                raise ValueError(f"precondition of {e!r} is not a G-formula: {print_formula(g)}")
        for a, table in self.indist.items():
            for (e, f), v in table.items():
                if e not in self.events or f not in self.events:
                    raise ValueError(f"u_{a} refers to unknown event in ({e},{f})")
                if not 0 <= v <= 1:
                    raise ValueError(f"u_{a}({e},{f}) = {v} outside [0,1]")
                if e == f and v != 1:
                    raise ValueError(f"u_{a}({e},{e}) must be 1, got {format_rational(v)}")

    @classmethod
    def build(
        cls,
        events: Iterable[str],
        indist: Mapping[str, Mapping[tuple[str, str], Any]] | None = None,
        pre: Mapping[str, Formula | str] | None = None,
        name: str = "A",
    ) -> ActionModel:
        """Dense tables with diagonal 1 and off-diagonal 0 unless given.

        Preconditions may be given as text and are parsed as G-formulas.
        """
        events = tuple(events)
        tables = {}
        for a, given in (indist or {}).items():
            table = {}
            for e in events:
                for f in events:
                    default = 1 if e == f else 0
                    table[(e, f)] = parse_rational(given.get((e, f), default))
            tables[a] = table
        pre = {e: parse_gformula(g) if isinstance(g, str) else g for e, g in (pre or {}).items()}
        return cls(events, tables, pre, name)

    def u(self, agent: str, e: str, f: str) -> Fraction:
        table = self.indist.get(agent)
        if table is None:
            return ONE if e == f else ZERO
        return table.get((e, f), ONE if e == f else ZERO)

    def values(self) -> Iterable[Fraction]:
        for table in self.indist.values():
            yield from table.values()


@dataclass(frozen=True)
class ProductModel(KripkeModel):
    """Updated model; ``pairs`` maps each state name to its ``(state, event)``."""

    pairs: Mapping[str, tuple[str, str]] = field(default_factory=dict)

    def state_of(self, s: str, e: str) -> str:
        return _pair_name(s, e)


def _pair_name(s: str, e: str) -> str:
    return f"({s},{e})"


def _check_preconditions(m: KripkeModel, a: ActionModel) -> None:
    for e, g in a.pre.items():
        unknown = formula_atoms(g) - set(m.props)
        if unknown:
            raise EvaluationError(f"precondition of {e!r} uses unknown prop(s) {sorted(unknown)}")
        unknown = formula_agents(g) - set(m.agents)
        if unknown:
            raise EvaluationError(f"precondition of {e!r} uses unknown agent(s) {sorted(unknown)}")


def _precondition_vectors(ev: Evaluator, a: ActionModel) -> dict[str, Vector]:
    return {e: ev.vector(a.pre[e]) for e in a.events}


def product_update(m: KripkeModel, a: ActionModel) -> ProductModel:
    """The product ``m x a`` restricted to pairs whose precondition holds.

    States are ordered by model state first, then event.
    """
    _check_preconditions(m, a)
    ev = Evaluator(m)
    return _product(m, a, _precondition_vectors(ev, a), ev.scale)


def _product(m: KripkeModel, a: ActionModel, pre: Mapping[str, Vector], top: int) -> ProductModel:
    pairs = {}
    for i, s in enumerate(m.states):
        for e in a.events:
            if pre[e][i] == top:
                pairs[_pair_name(s, e)] = (s, e)
    states = tuple(pairs)
    rel = {}
    for ag in m.agents:
        table = {}
        for x, (s1, e1) in pairs.items():
            for y, (s2, e2) in pairs.items():
                table[(x, y)] = min(m.r(ag, s1, s2), a.u(ag, e1, e2))
        rel[ag] = table
    val = {(x, p): m.pi(s, p) for x, (s, _) in pairs.items() for p in m.props}
    return ProductModel(states, m.agents, m.props, rel, val, pairs)


class UpdateEvaluator(Evaluator):
    """Evaluator that also handles ``[A,e]`` by evaluating in product models.

    Products (and their evaluators) are built once per action name and kept
    for the lifetime of this evaluator.
    """

    def __init__(
        self,
        model: KripkeModel,
        actions: Mapping[str, ActionModel],
        scale: int | None = None,
    ) -> None:
        self.actions = dict(actions)
        if scale is None:
            extra = [v for a in self.actions.values() for v in a.values()]
            scale = model_scale(model, extra)
        super().__init__(model, scale)
        self._inner: dict[str, tuple[ProductModel, UpdateEvaluator]] = {}

    def action(self, name: str) -> ActionModel:
        try:
            return self.actions[name]
        except KeyError:
            raise EvaluationError(f"unknown action model {name!r}") from None

    def product(self, name: str) -> tuple[ProductModel, UpdateEvaluator]:
        if name not in self._inner:
            a = self.action(name)
            _check_preconditions(self.model, a)
            prod = _product(self.model, a, _precondition_vectors(self, a), self.scale)
            self._inner[name] = (prod, UpdateEvaluator(prod, self.actions, self.scale))
        return self._inner[name]

    def _update(self, f: Update) -> Vector:
        a = self.action(f.action)
        if f.event not in a.events:
            raise EvaluationError(f"unknown event {f.event!r} of action model {f.action!r}")
        prod, inner = self.product(f.action)
        body = inner.vector(f.body)
        pre = self.vector(a.pre[f.event])
        d = self.scale
        out = []
        for i, s in enumerate(self.model.states):
            if pre[i] == d:
                out.append(body[prod.index(_pair_name(s, f.event))])
            else:
                out.append(d)
        return tuple(out)

    def check_vocabulary(self, f: Formula) -> None:
        super().check_vocabulary(f)
        for g in subformulas(f):
            if isinstance(g, Update):
                a = self.action(g.action)
                if g.event not in a.events:
                    raise EvaluationError(f"unknown event {g.event!r} of action model {g.action!r}")


def _registry(actions: Mapping[str, ActionModel] | Iterable[ActionModel] | None) -> dict[str, ActionModel]:
    if actions is None:
        return {}
    if isinstance(actions, Mapping):
        return dict(actions)
    return {a.name: a for a in actions}


def evaluate(
    m: KripkeModel,
    s: str,
    f: Formula,
    actions: Mapping[str, ActionModel] | Iterable[ActionModel] | None = None,
) -> Fraction:
    """``V_s(f)`` for formulas that may contain update modalities."""
    ev = UpdateEvaluator(m, _registry(actions))
    ev.check_vocabulary(f)
    return ev.value(s, f)


def degree_vector(
    m: KripkeModel,
    f: Formula,
    actions: Mapping[str, ActionModel] | Iterable[ActionModel] | None = None,
) -> dict[str, Fraction]:
    ev = UpdateEvaluator(m, _registry(actions))
    ev.check_vocabulary(f)
    return ev.degrees(f)


def eval_gformula(m: KripkeModel, s: str, g: Formula) -> Fraction:
    """Crisp value of a precondition formula at ``s``."""
    if not is_gformula(g):
        raise EvaluationError(f"not a G-formula: {print_formula(g)}")
    ev = Evaluator(m)
    ev.check_vocabulary(g)
    return ev.value(s, g)


def eval_update(
    m: KripkeModel,
    s: str,
    a: ActionModel,
    e: str,
    f: Formula,
    actions: Mapping[str, ActionModel] | Iterable[ActionModel] | None = None,
) -> Fraction:
    """``V_s([a,e] f)``: 1 when the precondition fails at ``s``."""
    registry = _registry(actions)
    registry[a.name] = a
    return evaluate(m, s, Update(a.name, e, f), registry)


# --------------------------------------------------------------------------
# serialization


def action_from_dict(doc: Mapping[str, Any], name: str = "A") -> ActionModel:
    if not isinstance(doc, Mapping):
        raise ModelError("action document must be an object")
    events = doc.get("events")
    if not isinstance(events, list) or not events or not all(isinstance(e, str) for e in events):
        raise ModelError("'events' must be a non-empty list of strings")
    indist: dict[str, dict[tuple[str, str], Fraction]] = {}
    for a, entries in doc.get("indist", {}).items():
        if not isinstance(entries, list):
            raise ModelError(f"indist of {a!r} must be a list of [event, event, value]")
        table = {}
        for entry in entries:
            if not (isinstance(entry, list) and len(entry) == 3):
                raise ModelError(f"bad indist entry {entry!r} for agent {a!r}")
            e, f, raw = entry
            if e not in events or f not in events:
                raise ModelError(f"indist of {a!r} refers to unknown event in {entry!r}")
            try:
                table[(e, f)] = parse_rational(raw)
            except ValueError as exc:
                raise ModelError(str(exc)) from None
        indist[a] = table
    raw_pre = doc.get("pre", {})
    if not isinstance(raw_pre, Mapping):
        raise ModelError("'pre' must be an object")
    pre = {}
    for e, text in raw_pre.items():
        if e not in events:
            raise ModelError(f"precondition for unknown event {e!r}")
        try:
            pre[e] = parse_gformula(text)
        except ParseError as exc:
            raise ModelError(f"precondition of {e!r}: {exc}") from None
    try:
        return ActionModel.build(events, indist, pre, name=doc.get("name", name))
    except ValueError as exc:
        raise ModelError(str(exc)) from None


def load_action(document: str | bytes | Mapping[str, Any], name: str = "A") -> ActionModel:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelError(f"invalid JSON: {exc}") from None
    return action_from_dict(document, name)


def action_to_dict(a: ActionModel) -> dict[str, Any]:
    return {
        "name": a.name,
        "events": list(a.events),
        "indist": {
            ag: [
                [e, f, format_rational(a.u(ag, e, f))]
                for e in a.events
                for f in a.events
                if e != f and a.u(ag, e, f) != 0
            ]
            for ag in a.indist
        },
        "pre": {e: print_formula(a.pre[e]) for e in a.events},
    }


def save_action(a: ActionModel) -> str:
    return json.dumps(action_to_dict(a), indent=2)


# --------------------------------------------------------------------------
# random generation


def random_gformula(
    rng: random.Random,
    props: Iterable[str],
    agents: Iterable[str],
    grid: int = 4,
    depth: int = 2,
) -> Formula:
    """Random precondition: crisp combinations of G-atoms over small psi."""
    props, agents = sorted(props), sorted(agents)

    def psi(d: int) -> Formula:
        if d == 0 or rng.random() < 0.4:
            return Atom(rng.choice(props)) if props else BOTTOM
        k = rng.randrange(3 if agents else 2)
        if k == 0:
            return And(psi(d - 1), psi(d - 1))
        if k == 1:
            return Implies(psi(d - 1), psi(d - 1))
        return Believes(rng.choice(agents), psi(d - 1))

    def chi(d: int) -> Formula:
        if d == 0 or rng.random() < 0.5:
            g = Fraction(rng.randint(0, grid), grid)
            body = psi(1)
            return (GEq if rng.random() < 0.5 else GGt)(body, g)
        k = rng.randrange(4)
        if k == 0:
            return And(chi(d - 1), chi(d - 1))
        if k == 1:
            return Or(chi(d - 1), chi(d - 1))
        if k == 2:
            return Implies(chi(d - 1), chi(d - 1))
        return neg(chi(d - 1))

    return chi(depth)


def random_action_model(
    seed: int | random.Random,
    agents: Iterable[str],
    props: Iterable[str],
    n_events: int = 2,
    grid: int = 4,
    name: str = "A",
) -> ActionModel:
    """Deterministic random action model with grid-valued off-diagonal entries."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    agents = tuple(agents)
    events = tuple(f"e{i}" for i in range(n_events))
    indist = {}
    for a in agents:
        indist[a] = {
            (e, f): ONE if e == f else Fraction(rng.randint(0, grid), grid)
            for e in events
            for f in events
        }
    pre = {e: random_gformula(rng, props, agents, grid) for e in events}
    return ActionModel(events, indist, pre, name)
