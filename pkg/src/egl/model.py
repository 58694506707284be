"""Finite fuzzy Kripke models.

A model has an ordered tuple of state names, a per-agent indistinguishing
function ``r_a(s, t)`` and a valuation ``pi(s, p)``, all valued in exact
rationals.  Relation and valuation tables are stored densely once built;
the JSON format is sparse and missing entries mean 0.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .formula import format_rational, parse_rational

__all__ = [
    "KripkeModel",
    "ModelError",
    "Finding",
    "ValidationReport",
    "validate",
    "load_model",
    "save_model",
    "model_to_dict",
    "model_from_dict",
    "random_model",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    states: tuple[str, ...]
    agents: tuple[str, ...]
    props: tuple[str, ...]
    relations: Mapping[str, Mapping[tuple[str, str], Fraction]]
    valuation: Mapping[tuple[str, str], Fraction]

    @classmethod
    def build(
        cls,
        states: Iterable[str],
        agents: Iterable[str],
        props: Iterable[str],
        relations: Mapping[str, Mapping[tuple[str, str], Any]] | None = None,
        valuation: Mapping[tuple[str, str], Any] | None = None,
    ) -> KripkeModel:
        """Build a total model; unspecified entries default to 0."""
        states, agents, props = tuple(states), tuple(agents), tuple(props)
        relations = relations or {}
        valuation = valuation or {}
        rel = {}
        for a in agents:
            given = relations.get(a, {})
            rel[a] = {
                (s, t): parse_rational(given.get((s, t), 0)) for s in states for t in states
            }
        val = {(s, p): parse_rational(valuation.get((s, p), 0)) for s in states for p in props}
        return cls(states, agents, props, rel, val)

    def r(self, agent: str, s: str, t: str) -> Fraction:
        return self.relations[agent].get((s, t), ZERO)

    def pi(self, s: str, p: str) -> Fraction:
        return self.valuation.get((s, p), ZERO)

    @property
    def reflexive(self) -> bool:
        return all(self.r(a, s, s) == 1 for a in self.agents for s in self.states)

    def index(self, state: str) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise KeyError(f"unknown state {state!r}") from None

    @property
    def _index(self) -> dict[str, int]:
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {s: i for i, s in enumerate(self.states)}
            object.__setattr__(self, "_index_cache", cached)
        return cached


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Finding:
    kind: str  # "range" | "missing" | "duplicate" | "unknown"
    where: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}: {self.where}" + (f" ({self.detail})" if self.detail else "")


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)
    reflexive: bool = False

    @property
    def ok(self) -> bool:
        return not self.findings


def validate(m: KripkeModel) -> ValidationReport:
    """Report range violations, missing table entries and reflexivity."""
    report = ValidationReport()
    seen: set[str] = set()
    for s in m.states:
        if s in seen:
            report.findings.append(Finding("duplicate", f"state {s}"))
        seen.add(s)
    for a in m.relations:
        if a not in m.agents:
            report.findings.append(Finding("unknown", f"agent {a}"))
    for a in m.agents:
        table = m.relations.get(a)
        if table is None:
            report.findings.append(Finding("missing", f"relation of agent {a}"))
            continue
        for s in m.states:
            for t in m.states:
                v = table.get((s, t))
                if v is None:
                    report.findings.append(Finding("missing", f"r_{a}({s},{t})"))
                elif not 0 <= v <= 1:
                    report.findings.append(Finding("range", f"r_{a}({s},{t})", format_rational(v)))
    for s in m.states:
        for p in m.props:
            v = m.valuation.get((s, p))
            if v is None:
                report.findings.append(Finding("missing", f"pi({s},{p})"))
            elif not 0 <= v <= 1:
                report.findings.append(Finding("range", f"pi({s},{p})", format_rational(v)))
    report.reflexive = all(
        m.relations.get(a, {}).get((s, s)) == 1 for a in m.agents for s in m.states
    )
    return report


# --------------------------------------------------------------------------
# serialization


def _value(raw: Any, where: str) -> Fraction:
    try:
        v = parse_rational(raw)
    except ValueError as exc:
        raise ModelError(f"{where}: {exc}") from None
    if not 0 <= v <= 1:
        raise ModelError(f"{where}: value {format_rational(v)} outside [0,1]")
    return v


def _names(doc: Mapping[str, Any], key: str) -> tuple[str, ...]:
    raw = doc.get(key, [])
    if not isinstance(raw, list) or not all(isinstance(x, str) and x for x in raw):
        raise ModelError(f"'{key}' must be a list of non-empty strings")
    if len(set(raw)) != len(raw):
        dup = next(x for x in raw if raw.count(x) > 1)
        raise ModelError(f"duplicate entry {dup!r} in '{key}'")
    return tuple(raw)


def model_from_dict(doc: Mapping[str, Any]) -> KripkeModel:
    if not isinstance(doc, Mapping):
        raise ModelError("model document must be an object")
    if "states" not in doc:
        raise ModelError("missing 'states'")
    states = _names(doc, "states")
    if not states:
        raise ModelError("'states' must be non-empty")
    agents = _names(doc, "agents")
    props = _names(doc, "props")
    state_set, agent_set, prop_set = set(states), set(agents), set(props)

    valuation: dict[tuple[str, str], Fraction] = {}
    raw_val = doc.get("valuation", {})
    if not isinstance(raw_val, Mapping):
        raise ModelError("'valuation' must be an object")
    for s, row in raw_val.items():
        if s not in state_set:
            raise ModelError(f"valuation refers to unknown state {s!r}")
        if not isinstance(row, Mapping):
            raise ModelError(f"valuation of {s!r} must be an object")
        for p, raw in row.items():
            if p not in prop_set:
                raise ModelError(f"valuation refers to unknown prop {p!r}")
            valuation[(s, p)] = _value(raw, f"pi({s},{p})")

    relations: dict[str, dict[tuple[str, str], Fraction]] = {a: {} for a in agents}
    raw_rel = doc.get("relations", {})
    if not isinstance(raw_rel, Mapping):
        raise ModelError("'relations' must be an object")
    for a, entries in raw_rel.items():
        if a not in agent_set:
            raise ModelError(f"relations refer to unknown agent {a!r}")
        if not isinstance(entries, list):
            raise ModelError(f"relations of {a!r} must be a list of [state, state, value]")
        for entry in entries:
            if not (isinstance(entry, list) and len(entry) == 3):
                raise ModelError(f"bad relation entry {entry!r} for agent {a!r}")
            s, t, raw = entry
            for x in (s, t):
                if x not in state_set:
                    raise ModelError(f"relation of {a!r} refers to unknown state {x!r}")
            relations[a][(s, t)] = _value(raw, f"r_{a}({s},{t})")

    return KripkeModel.build(states, agents, props, relations, valuation)


def load_model(document: str | bytes | Mapping[str, Any]) -> KripkeModel:
    """Parse a JSON model document (text, bytes or an already-decoded dict)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelError(f"invalid JSON: {exc}") from None
    return model_from_dict(document)


def model_to_dict(m: KripkeModel) -> dict[str, Any]:
    return {
        "agents": list(m.agents),
        "props": list(m.props),
        "states": list(m.states),
        "valuation": {s: {p: format_rational(m.pi(s, p)) for p in m.props} for s in m.states},
        "relations": {
            a: [
                [s, t, format_rational(m.r(a, s, t))]
                for s in m.states
                for t in m.states
                if m.r(a, s, t) != 0
            ]
            for a in m.agents
        },
    }


def save_model(m: KripkeModel) -> str:
    return json.dumps(model_to_dict(m), indent=2)


# --------------------------------------------------------------------------
# random generation


def random_model(
    seed: int | random.Random,
    n_states: int,
    agents: Iterable[str],
    props: Iterable[str],
    grid: int = 4,
    reflexive: bool = False,
) -> KripkeModel:
    """Model with every value drawn uniformly from ``{0, 1/grid, ..., 1}``.

    Deterministic in ``seed``.  With ``reflexive`` the diagonal of every
    relation is forced to 1 (those entries are still drawn, then overwritten,
    so the two variants share their off-diagonal values).
    """
    if n_states < 1 or grid < 1:
        raise ValueError("need n_states >= 1 and grid >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    states = tuple(f"s{i}" for i in range(n_states))
    agents, props = tuple(agents), tuple(props)

    def draw() -> Fraction:
        return Fraction(rng.randint(0, grid), grid)

    rel = {}
    for a in agents:
        table = {}
        for s in states:
            for t in states:
                v = draw()
                table[(s, t)] = ONE if reflexive and s == t else v
        rel[a] = table
    val = {(s, p): draw() for s in states for p in props}
    return KripkeModel(states, agents, props, rel, val)
