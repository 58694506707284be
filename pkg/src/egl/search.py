"""Validity testing by fixtures and by random models.

``falsify`` looks for a state of a random grid-valued model where a formula
drops below 1.  ``sweep`` instantiates scheme templates (atoms ``phi`` and
``psi`` are placeholders) with random formulas on random models and collects
every failure.  ``regression_suite`` pins the exact counterexample values of
the introspection-style schemes on the two-children muddy model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Sequence

from .dynamic import ActionModel, UpdateEvaluator, random_action_model
from .evaluation import Evaluator
from .formula import (
    And,
    Atom,
    BOTTOM,
    Believes,
    Common,
    Everyone,
    Formula,
    Iff,
    Implies,
    Or,
    Update,
    agents as formula_agents,
    atoms as formula_atoms,
    conjoin,
    everyone_power,
    format_rational,
    neg,
    parse_formula,
    print_formula,
    subformulas,
    substitute,
)
from .model import KripkeModel, random_model
from .scenarios import MuddyParams, build_muddy, two_children

__all__ = [
    "SchemeInstance",
    "Expected",
    "Witness",
    "Failure",
    "RegressionRow",
    "RegressionReport",
    "VALID_SCHEMES",
    "REFLEXIVE_SCHEMES",
    "INVALID_SCHEMES",
    "instantiate",
    "random_formula",
    "falsify",
    "sweep",
    "update_schemes",
    "update_sweep",
    "regression_suite",
    "format_value",
]

GROUP = frozenset({"a", "b"})
PHI, PSI = Atom("phi"), Atom("psi")


def format_value(v: Fraction) -> str:
    return f"{format_rational(v)} ({float(v):.6g})"


# --------------------------------------------------------------------------
# scheme catalogue


@dataclass(frozen=True)
class Expected:
    """Known counterexample: value ``value`` at ``state`` of a fixture model."""

    state: str
    value: Fraction


@dataclass(frozen=True)
class SchemeInstance:
    name: str
    formula: Formula
    expected: Literal["valid", "valid-reflexive"] | Expected


def _scheme(name: str, text: str, kind: str) -> SchemeInstance:
    return SchemeInstance(name, parse_formula(text), kind)


def _e_power_schemes(kind: str) -> list[SchemeInstance]:
    out = []
    for n in (1, 2, 3):
        en = lambda f: everyone_power(GROUP, f, n)  # noqa: E731
        out.append(
            SchemeInstance(
                f"E^{n}-K",
                Implies(And(en(Implies(PHI, PSI)), en(PHI)), en(PSI)),
                kind,
            )
        )
        out.append(
            SchemeInstance(
                f"E^{n}-K-curried",
                Implies(en(Implies(PHI, PSI)), Implies(en(PHI), en(PSI))),
                kind,
            )
        )
    return out


VALID_SCHEMES: list[SchemeInstance] = [
    _scheme("K", "B{a} phi & B{a}(phi -> psi) -> B{a} psi", "valid"),
    _scheme("K-curried", "B{a}(phi -> psi) -> (B{a} phi -> B{a} psi)", "valid"),
    _scheme("double-negation-B", "~~B{a} ~~phi -> ~~B{a} phi", "valid"),
    _scheme("B-conjunction", "B{a}(phi & psi) <-> B{a} phi & B{a} psi", "valid"),
    _scheme("C-K", "C{a,b}(phi -> psi) & C{a,b} phi -> C{a,b} psi", "valid"),
]

REFLEXIVE_SCHEMES: list[SchemeInstance] = [
    _scheme("T", "B{a} phi -> phi", "valid-reflexive"),
    _scheme("E-T", "E{a,b} phi -> phi", "valid-reflexive"),
    _scheme("C-T", "C{a,b} phi -> phi", "valid-reflexive"),
    *_e_power_schemes("valid-reflexive"),
    *[
        SchemeInstance(
            f"E^{n}-induction",
            Implies(
                everyone_power(GROUP, Implies(PHI, Everyone(GROUP, PHI)), n),
                everyone_power(GROUP, PHI, n),
            ),
            "valid-reflexive",
        )
        for n in (1, 2, 3)
    ],
    _scheme("E-to-B", "E{a,b} phi -> B{a} phi", "valid-reflexive"),
    _scheme("C-to-E", "C{a,b} phi -> E{a,b} phi", "valid-reflexive"),
    _scheme("C-K-reflexive", "C{a,b}(phi -> psi) & C{a,b} phi -> C{a,b} psi", "valid-reflexive"),
    _scheme("C-induction", "C{a,b}(phi -> E{a,b} phi) -> (phi -> C{a,b} phi)", "valid-reflexive"),
]

INVALID_SCHEMES: list[SchemeInstance] = [
    SchemeInstance(
        "positive-introspection",
        parse_formula("B{b} m_a -> B{b} B{b} m_a"),
        Expected("(1,1)", Fraction(19, 100)),
    ),
    SchemeInstance(
        "negative-introspection",
        parse_formula("~B{a} m_b -> B{a} ~B{a} m_b"),
        Expected("(0.5,0)", Fraction(16, 25)),
    ),
    SchemeInstance(
        "B-disjunction",
        parse_formula("B{b}(m_a | (m_a -> m_b)) -> B{b} m_a | B{b}(m_a -> m_b)"),
        Expected("(0,0)", Fraction(19, 100)),
    ),
    SchemeInstance(
        "negation-B",
        parse_formula("~B{b} m_a -> B{b} ~m_a"),
        Expected("(0,0)", Fraction(19, 100)),
    ),
    SchemeInstance(
        "B-excluded-middle",
        parse_formula("B{b} m_a | B{b} ~m_a"),
        Expected("(0.5,0)", Fraction(19, 100)),
    ),
    SchemeInstance(
        "B-symmetry",
        parse_formula("m_a -> B{b} ~B{b} ~m_a"),
        Expected("(1,0)", Fraction(7, 25)),
    ),
]


def instantiate(scheme: Formula | SchemeInstance, phi: Formula, psi: Formula | None = None) -> Formula:
    f = scheme.formula if isinstance(scheme, SchemeInstance) else scheme
    mapping = {"phi": phi}
    if psi is not None:
        mapping["psi"] = psi
    return substitute(f, mapping)


# --------------------------------------------------------------------------
# random formulas


def random_formula(
    rng: random.Random,
    props: Sequence[str],
    agents: Sequence[str],
    depth: int = 3,
    groups: bool = False,
    updates: Mapping[str, ActionModel] | None = None,
) -> Formula:
    """Random formula of depth at most ``depth``.

    ``groups`` adds E/C operators over the full agent set; ``updates`` adds
    ``[A,e]`` modalities drawn from the given registry.
    """
    props, agents = list(props), list(agents)
    updates = dict(updates or {})
    kinds = ["and", "or", "imp", "not"]
    if agents:
        kinds += ["B", "B"]
        if groups:
            kinds += ["E", "C"]
    if updates:
        kinds += ["upd"]

    def go(d: int) -> Formula:
        if d == 0 or rng.random() < 0.25:
            if not props or rng.random() < 0.05:
                return BOTTOM
            return Atom(rng.choice(props))
        k = rng.choice(kinds)
        if k == "and":
            return And(go(d - 1), go(d - 1))
        if k == "or":
            return Or(go(d - 1), go(d - 1))
        if k == "imp":
            return Implies(go(d - 1), go(d - 1))
        if k == "not":
            return neg(go(d - 1))
        if k == "B":
            return Believes(rng.choice(agents), go(d - 1))
        if k in ("E", "C"):
            group = frozenset(rng.sample(agents, rng.randint(1, len(agents))))
            return (Everyone if k == "E" else Common)(group, go(d - 1))
        name = rng.choice(sorted(updates))
        return Update(name, rng.choice(updates[name].events), go(d - 1))

    return go(depth)


# --------------------------------------------------------------------------
# falsification


@dataclass(frozen=True)
class Witness:
    formula: Formula
    model: KripkeModel
    state: str
    value: Fraction
    trial: int
    actions: Mapping[str, ActionModel] = field(default_factory=dict)

    def replay(self) -> Fraction:
        ev = UpdateEvaluator(self.model, self.actions)
        return ev.value(self.state, self.formula)

    def __str__(self) -> str:
        return f"trial {self.trial}, state {self.state}: {format_value(self.value)}"


def _evaluator(m: KripkeModel, actions: Mapping[str, ActionModel]) -> Evaluator:
    return UpdateEvaluator(m, actions) if actions else Evaluator(m)


def falsify(
    f: Formula,
    budget: int,
    reflexive: bool = False,
    seed: int = 0,
    grid: int = 4,
    max_states: int = 5,
    actions: Mapping[str, ActionModel] | None = None,
    agents: Iterable[str] | None = None,
    props: Iterable[str] | None = None,
) -> Witness | None:
    """First state (by trial index, then state order) where ``f`` is below 1.

    Each trial draws a model with 1..``max_states`` states over the formula's
    vocabulary (plus any extra ``agents``/``props`` and those used by the
    action preconditions).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    actions = dict(actions or {})
    vocab_agents = set(formula_agents(f)) | set(agents or ())
    vocab_props = set(formula_atoms(f)) | set(props or ())
    for a in actions.values():
        vocab_agents |= set(a.indist)
        for g in a.pre.values():
            vocab_agents |= formula_agents(g)
            vocab_props |= formula_atoms(g)
    ag, pr = sorted(vocab_agents) or ["a"], sorted(vocab_props)
    for trial in range(budget):
        rng = random.Random(seed * 1_000_003 + trial)
        m = random_model(rng, rng.randint(1, max_states), ag, pr, grid, reflexive)
        ev = _evaluator(m, actions)
        vec = ev.vector(f)
        for i, v in enumerate(vec):
            if v != ev.scale:
                return Witness(f, m, m.states[i], ev.to_fraction(v), trial, actions)
    return None


@dataclass(frozen=True)
class Failure:
    scheme: str
    formula: Formula
    model: KripkeModel
    state: str
    value: Fraction
    trial: int


def sweep(
    schemes: Iterable[SchemeInstance],
    trials: int,
    seed: int = 0,
    reflexive: bool = False,
    grid: int = 4,
    max_states: int = 5,
    agents: Sequence[str] = ("a", "b"),
    props: Sequence[str] = ("p", "q"),
    depth: int = 3,
    groups: bool = True,
    stop_after: int | None = None,
) -> list[Failure]:
    """Instantiate every scheme with fresh random ``phi``/``psi`` on each of
    ``trials`` random models and return all states where one is below 1."""
    schemes = list(schemes)
    failures: list[Failure] = []
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        m = random_model(rng, rng.randint(1, max_states), agents, props, grid, reflexive)
        ev = Evaluator(m)
        phi = random_formula(rng, props, agents, depth, groups)
        psi = random_formula(rng, props, agents, depth, groups)
        for sc in schemes:
            f = instantiate(sc, phi, psi)
            for i, v in enumerate(ev.vector(f)):
                if v != ev.scale:
                    failures.append(Failure(sc.name, f, m, m.states[i], ev.to_fraction(v), trial))
                    if stop_after is not None and len(failures) >= stop_after:
                        return failures
    return failures


def update_schemes(
    action: ActionModel, event: str, agent: str, phi: Formula, psi: Formula, prop: str
) -> list[tuple[str, Formula]]:
    """The five update validities for one action, event, agent and instantiation."""
    name, pre = action.name, action.pre[event]

    def upd(f: Formula, e: str = event) -> Formula:
        return Update(name, e, f)

    p = Atom(prop)
    alternatives = [
        Believes(agent, upd(phi, e2))
        for e2 in action.events
        if action.u(agent, event, e2) != 0
    ]
    return [
        ("update-atom", Iff(upd(p), Implies(pre, p))),
        ("update-negation", Iff(upd(neg(phi)), Implies(pre, neg(upd(phi))))),
        ("update-conjunction", Iff(upd(And(phi, psi)), And(upd(phi), upd(psi)))),
        ("update-belief-out", Implies(upd(Believes(agent, phi)), Implies(pre, Believes(agent, upd(phi))))),
        ("update-belief-in", Implies(conjoin(alternatives), upd(Believes(agent, phi)))),
    ]


def update_sweep(
    trials: int,
    seed: int = 0,
    grid: int = 4,
    max_states: int = 5,
    max_events: int = 3,
    agents: Sequence[str] = ("a", "b"),
    props: Sequence[str] = ("p", "q"),
    depth: int = 3,
) -> list[Failure]:
    """Check the update validities on ``trials`` random (model, action) pairs,
    for every event and agent, with fresh random ``phi``/``psi`` per pair."""
    failures: list[Failure] = []
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        m = random_model(rng, rng.randint(1, max_states), agents, props, grid)
        a = random_action_model(rng, agents, props, rng.randint(1, max_events), grid)
        registry = {a.name: a}
        ev = UpdateEvaluator(m, registry)
        phi = random_formula(rng, props, agents, depth, updates=registry)
        psi = random_formula(rng, props, agents, depth, updates=registry)
        prop = rng.choice(list(props))
        for e in a.events:
            for ag in agents:
                for name, f in update_schemes(a, e, ag, phi, psi, prop):
                    for i, v in enumerate(ev.vector(f)):
                        if v != ev.scale:
                            failures.append(
                                Failure(name, f, m, m.states[i], ev.to_fraction(v), trial)
                            )
    return failures


# --------------------------------------------------------------------------
# regression fixture


@dataclass(frozen=True)
class RegressionRow:
    name: str
    formula: Formula
    state: str
    expected: Fraction
    computed: Fraction

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def __str__(self) -> str:
        verdict = "ok" if self.ok else "MISMATCH"
        text = f"{self.name}\t{verdict}\t{self.state}\t{format_rational(self.computed)}"
        if not self.ok:
            text += f"\texpected {format_rational(self.expected)}"
        return text


@dataclass
class RegressionReport:
    rows: list[RegressionRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def mismatches(self) -> list[RegressionRow]:
        return [r for r in self.rows if not r.ok]

    def __str__(self) -> str:
        return "\n".join(map(str, self.rows))


def regression_suite(params: MuddyParams | None = None) -> RegressionReport:
    """Evaluate each invalid scheme at its recorded state of the muddy model."""
    m = build_muddy(params or two_children())
    ev = Evaluator(m)
    rows = []
    for sc in INVALID_SCHEMES:
        assert isinstance(sc.expected, Expected)
        rows.append(
            RegressionRow(
                sc.name,
                sc.formula,
                sc.expected.state,
                sc.expected.value,
                ev.value(sc.expected.state, sc.formula),
            )
        )
    return RegressionReport(rows)
