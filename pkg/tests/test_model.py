from __future__ import annotations

import json
import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egl.model import KripkeModel, ModelError, load_model, random_model, save_model, validate

F = Fraction


def test_muddy_model_validates_reflexive(muddy):
    report = validate(muddy)
    assert report.ok
    assert report.reflexive
    assert len(muddy.states) == 9 and muddy.agents == ("a", "b")


def test_serialized_muddy_model(muddy):
    again = load_model(save_model(muddy))
    assert again == muddy
    assert len(again.states) == 9 and len(again.agents) == 2


def test_non_reflexive_detected():
    m = KripkeModel.build(["s", "t"], ["a"], [], {"a": {("s", "s"): "0.9", ("t", "t"): 1}})
    report = validate(m)
    assert report.ok and not report.reflexive


def test_defaults_to_zero():
    m = load_model({"agents": ["a"], "props": ["p"], "states": ["s", "t"]})
    assert all(m.r("a", s, t) == 0 for s in m.states for t in m.states)
    assert m.pi("s", "p") == 0


def test_exact_values():
    doc = {
        "agents": ["a"],
        "props": ["p"],
        "states": ["s"],
        "valuation": {"s": {"p": "19/100"}},
        "relations": {"a": [["s", "s", "0.28"]]},
    }
    m = load_model(json.dumps(doc))
    assert m.pi("s", "p") == F(19, 100)
    assert m.r("a", "s", "s") == F(7, 25)


@pytest.mark.parametrize(
    "doc, message",
    [
        ({"agents": [], "props": []}, "states"),
        ({"states": []}, "non-empty"),
        ({"states": ["s", "s"]}, "duplicate"),
        ({"states": ["s"], "props": ["p"], "valuation": {"s": {"p": "1.2"}}}, "outside"),
        ({"states": ["s"], "props": ["p"], "valuation": {"s": {"q": 1}}}, "unknown prop"),
        ({"states": ["s"], "props": ["p"], "valuation": {"t": {"p": 1}}}, "unknown state"),
        ({"states": ["s"], "agents": ["a"], "relations": {"b": []}}, "unknown agent"),
        ({"states": ["s"], "agents": ["a"], "relations": {"a": [["s", "t", 1]]}}, "unknown state"),
        ({"states": ["s"], "agents": ["a"], "relations": {"a": [["s", "s"]]}}, "bad relation"),
        ({"states": ["s"], "agents": ["a"], "relations": {"a": [["s", "s", "-1/2"]]}}, "outside"),
        ({"states": ["s"], "props": ["p"], "valuation": {"s": {"p": "x"}}}, "pi"),
    ],
)
def test_schema_errors(doc, message):
    with pytest.raises(ModelError, match=message):
        load_model(doc)


def test_invalid_json():
    with pytest.raises(ModelError, match="JSON"):
        load_model("{not json")


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10**6),
    n=st.integers(1, 5),
    grid=st.integers(1, 12),
    reflexive=st.booleans(),
)
def test_save_load_round_trip(seed, n, grid, reflexive):
    m = random_model(seed, n, ["a", "b"], ["p", "q"], grid, reflexive)
    assert load_model(save_model(m)) == m


def test_random_model_reflexive_flag():
    m = random_model(7, 3, ["a", "b"], ["p"], grid=4, reflexive=True)
    assert all(m.r(a, s, s) == 1 for a in m.agents for s in m.states)
    assert validate(m).reflexive


def test_random_model_deterministic():
    assert random_model(7, 4, ["a"], ["p"], 4) == random_model(7, 4, ["a"], ["p"], 4)
    assert random_model(7, 4, ["a"], ["p"], 4) != random_model(8, 4, ["a"], ["p"], 4)
    rng1, rng2 = random.Random(3), random.Random(3)
    assert random_model(rng1, 2, ["a"], ["p"]) == random_model(rng2, 2, ["a"], ["p"])


def test_random_model_crisp_grid():
    m = random_model(7, 4, ["a", "b"], ["p", "q"], grid=1)
    values = [*m.valuation.values(), *(v for t in m.relations.values() for v in t.values())]
    assert set(values) <= {0, 1}


@pytest.mark.parametrize("grid", [2, 3, 4, 5, 7])
def test_random_model_grid_denominators(grid):
    m = random_model(grid, 5, ["a", "b"], ["p", "q"], grid)
    values = [*m.valuation.values(), *(v for t in m.relations.values() for v in t.values())]
    assert all(grid % v.denominator == 0 for v in values)
    assert all(0 <= v <= 1 for v in values)


def _mutations(m: KripkeModel):
    """One corrupted entry each, with the kind of finding it must produce."""
    s, t = m.states[0], m.states[-1]
    rel = {a: dict(table) for a, table in m.relations.items()}
    rel["a"][(s, t)] = F(3, 2)
    yield replace(m, relations=rel), "range"
    rel = {a: dict(table) for a, table in m.relations.items()}
    del rel["b"][(t, s)]
    yield replace(m, relations=rel), "missing"
    val = dict(m.valuation)
    val[(t, "q")] = F(-1, 4)
    yield replace(m, valuation=val), "range"
    val = dict(m.valuation)
    del val[(s, "p")]
    yield replace(m, valuation=val), "missing"
    yield replace(m, states=m.states + (s,)), "duplicate"
    yield replace(m, relations={**m.relations, "z": {}}), "unknown"


@pytest.mark.parametrize("index", range(6))
def test_validate_flags_each_mutation(index):
    m = random_model(11, 3, ["a", "b"], ["p", "q"], 4)
    mutated, kind = list(_mutations(m))[index]
    findings = validate(mutated).findings
    if kind == "duplicate":
        # a duplicated state also duplicates its table rows; the state itself is flagged once
        assert [f.kind for f in findings if f.kind == "duplicate"] == ["duplicate"]
    else:
        assert [f.kind for f in findings] == [kind]
