"""Fuzzy muddy children and the hearing-impaired announcement.

States are k-tuples of mud levels from ``{0, 1/(n-1), ..., 1}``.  Child ``i``
sees every face but its own, through a visual impairment factor, so

    r_i(s, t) = min over j != i of  (1 if s_j == t_j else visual_i * (1 - alpha * |s_j - t_j|))

and the proposition ``m_<agent>`` holds to the degree of that agent's mud.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .dynamic import ActionModel
from .formula import Formula, format_rational, parse_gformula, parse_rational
from .model import KripkeModel

__all__ = [
    "MuddyParams",
    "AnnouncementParams",
    "build_muddy",
    "build_announcement",
    "mud_levels",
    "state_name",
    "format_level",
    "muddy_params_from_dict",
    "announcement_params_from_dict",
    "two_children",
    "exactly_one_muddy",
]


def format_level(x: Fraction) -> str:
    """Terminating decimals print as decimals (``0.5``), anything else as ``p/q``."""
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return format_rational(x)
    digits = 0
    while (x * 10**digits).denominator != 1:
        digits += 1
    scaled = abs(int(x * 10**digits))
    whole, frac = divmod(scaled, 10**digits)
    return f"{'-' if x < 0 else ''}{whole}.{frac:0{digits}d}"


def state_name(levels: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_level(v) for v in levels) + ")"


@dataclass(frozen=True)
class MuddyParams:
    agents: tuple[str, ...]
    n: int
    alpha: Fraction
    visual: Mapping[str, Fraction]

    def __post_init__(self) -> None:
        if not self.agents:
            raise ValueError("need at least one agent")
        if len(set(self.agents)) != len(self.agents):
            raise ValueError("duplicate agent names")
        if self.n < 2:
            raise ValueError(f"granularity n must be >= 2, got {self.n}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0,1), got {self.alpha}")
        for a in self.agents:
            if a not in self.visual:
                raise ValueError(f"no visual impairment given for agent {a!r}")
            if not 0 <= self.visual[a] <= 1:
                raise ValueError(f"visual impairment of {a!r} outside [0,1]")

    @property
    def k(self) -> int:
        return len(self.agents)


@dataclass(frozen=True)
class AnnouncementParams:
    hearing: Mapping[str, Fraction]
    events: tuple[tuple[str, Formula], ...]

    def __post_init__(self) -> None:
        if not self.events:
            raise ValueError("need at least one event")
        for a, h in self.hearing.items():
            if not 0 <= h <= 1:
                raise ValueError(f"hearing impairment of {a!r} outside [0,1]")


def mud_levels(n: int) -> list[Fraction]:
    """Right endpoints of the ``n`` intervals; the first interval is ``{0}``."""
    return [Fraction(i, n - 1) for i in range(n)]


def _pairwise(visual: Fraction, alpha: Fraction, x: Fraction, y: Fraction) -> Fraction:
    if x == y:
        return Fraction(1)
    return visual * (1 - alpha * abs(x - y))


def build_muddy(p: MuddyParams) -> KripkeModel:
    levels = mud_levels(p.n)
    tuples = list(itertools.product(levels, repeat=p.k))
    names = [state_name(t) for t in tuples]
    props = tuple(f"m_{a}" for a in p.agents)
    valuation = {
        (name, props[i]): t[i] for name, t in zip(names, tuples) for i in range(p.k)
    }
    relations = {}
    for i, a in enumerate(p.agents):
        table = {}
        for n1, t1 in zip(names, tuples):
            for n2, t2 in zip(names, tuples):
                factors = [
                    _pairwise(p.visual[a], p.alpha, t1[j], t2[j]) for j in range(p.k) if j != i
                ]
                # a lone child sees nothing, so every pair is indistinguishable
                table[(n1, n2)] = min(factors, default=Fraction(1))
        relations[a] = table
    return KripkeModel(tuple(names), p.agents, props, relations, valuation)


def build_announcement(p: AnnouncementParams, name: str = "ann") -> ActionModel:
    events = tuple(e for e, _ in p.events)
    indist = {
        a: {(e, f): Fraction(1) if e == f else h for e in events for f in events}
        for a, h in p.hearing.items()
    }
    return ActionModel(events, indist, dict(p.events), name)


# --------------------------------------------------------------------------
# parameter files


def muddy_params_from_dict(doc: Mapping[str, Any]) -> MuddyParams:
    """``{"agents": [...], "n": 3, "alpha": "1/5", "visual": {agent: value}}``."""
    visual = {a: parse_rational(v) for a, v in doc["visual"].items()}
    agents = tuple(doc.get("agents", visual))
    if "k" in doc and doc["k"] != len(agents):
        raise ValueError(f"k = {doc['k']} but {len(agents)} agents given")
    return MuddyParams(agents, int(doc["n"]), parse_rational(doc["alpha"]), visual)


def announcement_params_from_dict(doc: Mapping[str, Any]) -> AnnouncementParams:
    """``{"hearing": {agent: value}, "events": [[name, gformula], ...]}``."""
    hearing = {a: parse_rational(v) for a, v in doc["hearing"].items()}
    events = tuple((e, parse_gformula(text)) for e, text in doc["events"])
    return AnnouncementParams(hearing, events)


def two_children(
    alpha: Fraction = Fraction(1, 5),
    visual_a: Fraction = Fraction(2, 5),
    visual_b: Fraction = Fraction(9, 10),
) -> MuddyParams:
    """Two children ``a`` and ``b`` with mud levels ``{0, 1/2, 1}``."""
    return MuddyParams(("a", "b"), 3, alpha, {"a": visual_a, "b": visual_b})


EXACTLY_ONE_AT_LEAST_HALF = (
    "(G(m_a) >= 1/2 | G(m_b) >= 1/2) & ~(G(m_a) >= 1/2 & G(m_b) >= 1/2)"
)
EXACTLY_ONE_HALF = "(G(m_a) = 1/2 | G(m_b) = 1/2) & ~(G(m_a) = 1/2 & G(m_b) = 1/2)"


def exactly_one_muddy(
    hearing_a: Fraction = Fraction(0), hearing_b: Fraction = Fraction(3, 4)
) -> AnnouncementParams:
    """Announcement ``e1``: exactly one face is at least a little muddy;
    ``e2``: exactly one face is a little (= 1/2) muddy."""
    return AnnouncementParams(
        {"a": hearing_a, "b": hearing_b},
        (
            ("e1", parse_gformula(EXACTLY_ONE_AT_LEAST_HALF)),
            ("e2", parse_gformula(EXACTLY_ONE_HALF)),
        ),
    )
