from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from egl.formula import parse_gformula
from egl.model import validate
from egl.scenarios import (
    AnnouncementParams,
    MuddyParams,
    announcement_params_from_dict,
    build_announcement,
    build_muddy,
    format_level,
    mud_levels,
    muddy_params_from_dict,
    state_name,
    two_children,
)

F = Fraction


def coords(state: str) -> tuple[Fraction, ...]:
    return tuple(F(x) for x in state.strip("()").split(","))


def values_by_gap(m, agent: str, other: int) -> dict[Fraction, set[Fraction]]:
    out: dict[Fraction, set[Fraction]] = {}
    for s in m.states:
        for t in m.states:
            gap = abs(coords(s)[other] - coords(t)[other])
            out.setdefault(gap, set()).add(m.r(agent, s, t))
    return out


def test_two_children_tables(muddy):
    assert len(muddy.states) == 9
    assert muddy.states[:4] == ("(0,0)", "(0,0.5)", "(0,1)", "(0.5,0)")
    assert values_by_gap(muddy, "a", 1) == {0: {1}, F(1, 2): {F(9, 25)}, 1: {F(8, 25)}}
    assert values_by_gap(muddy, "b", 0) == {0: {1}, F(1, 2): {F(81, 100)}, 1: {F(18, 25)}}
    assert muddy.pi("(0.5,1)", "m_a") == F(1, 2) and muddy.pi("(0.5,1)", "m_b") == 1


@pytest.mark.parametrize(
    "params",
    [
        two_children(),
        MuddyParams(("a", "b", "c"), 2, F(1, 3), {"a": F(1), "b": F(1, 2), "c": F(0)}),
        MuddyParams(("a",), 4, F(1, 2), {"a": F(3, 4)}),
        MuddyParams(("x", "y"), 5, F(9, 10), {"x": F(1, 10), "y": F(1)}),
    ],
)
def test_always_reflexive(params):
    m = build_muddy(params)
    report = validate(m)
    assert report.ok and report.reflexive
    assert len(m.states) == params.n**params.k


def test_zero_visual_impairment_distinguishes_everything():
    m = build_muddy(two_children(visual_a=F(0)))
    for s in m.states:
        for t in m.states:
            if coords(s)[1] != coords(t)[1]:
                assert m.r("a", s, t) == 0


def test_three_children_against_brute_force():
    p = MuddyParams(("a", "b", "c"), 2, F(1, 5), {"a": F(2, 5), "b": F(9, 10), "c": F(3, 4)})
    m = build_muddy(p)
    tuples = list(itertools.product([F(0), F(1)], repeat=3))
    assert len(m.states) == 8
    assert [coords(s) for s in m.states] == tuples
    for i, a in enumerate(p.agents):
        for s, t in itertools.product(tuples, repeat=2):
            expected = F(1)
            for j in range(3):
                if j == i:
                    continue
                factor = F(1) if s[j] == t[j] else p.visual[a] * (1 - p.alpha * abs(s[j] - t[j]))
                expected = min(expected, factor)
            assert m.r(a, state_name(s), state_name(t)) == expected


def test_pairwise_factor_is_monotone_in_the_gap():
    m = build_muddy(MuddyParams(("a", "b"), 5, F(1, 5), {"a": F(1), "b": F(1)}))
    gaps = values_by_gap(m, "a", 1)
    ordered = [min(gaps[g]) for g in sorted(gaps)]
    assert ordered == sorted(ordered, reverse=True)
    assert len(set(ordered)) == len(ordered)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(agents=(), n=3, alpha=F(1, 5), visual={}),
        dict(agents=("a",), n=1, alpha=F(1, 5), visual={"a": F(1)}),
        dict(agents=("a",), n=3, alpha=F(0), visual={"a": F(1)}),
        dict(agents=("a",), n=3, alpha=F(1), visual={"a": F(1)}),
        dict(agents=("a",), n=3, alpha=F(1, 2), visual={"a": F(3, 2)}),
        dict(agents=("a", "b"), n=3, alpha=F(1, 2), visual={"a": F(1)}),
        dict(agents=("a", "a"), n=3, alpha=F(1, 2), visual={"a": F(1)}),
    ],
)
def test_parameter_violations(kwargs):
    with pytest.raises(ValueError):
        MuddyParams(**kwargs)


def test_announcements():
    single = build_announcement(AnnouncementParams({"a": F(1, 3)}, (("e", parse_gformula("G(m_a) = 1")),)))
    assert single.u("a", "e", "e") == 1
    deaf = build_announcement(
        AnnouncementParams(
            {"a": F(1)}, (("e1", parse_gformula("G(m_a) = 1")), ("e2", parse_gformula("G(m_a) = 0")))
        )
    )
    assert all(deaf.u("a", e, f) == 1 for e in deaf.events for f in deaf.events)
    with pytest.raises(ValueError):
        AnnouncementParams({"a": F(2)}, (("e", parse_gformula("G(m_a) = 1")),))
    with pytest.raises(ValueError):
        AnnouncementParams({"a": F(1)}, ())


def test_parameter_files():
    p = muddy_params_from_dict({"agents": ["a", "b"], "n": 3, "alpha": "0.2", "visual": {"a": "2/5", "b": 0.9}})
    assert p == two_children()
    with pytest.raises(ValueError):
        muddy_params_from_dict({"k": 3, "agents": ["a"], "n": 3, "alpha": "0.2", "visual": {"a": 1}})
    ann = announcement_params_from_dict({"hearing": {"a": 0, "b": "3/4"}, "events": [["e1", "G(m_a) = 1"]]})
    assert ann.hearing == {"a": 0, "b": F(3, 4)}


def test_level_formatting():
    assert mud_levels(3) == [0, F(1, 2), 1]
    assert [format_level(x) for x in mud_levels(5)] == ["0", "0.25", "0.5", "0.75", "1"]
    assert format_level(F(1, 3)) == "1/3"
    assert state_name((F(1, 2), F(0))) == "(0.5,0)"
