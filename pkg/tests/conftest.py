from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from egl.formula import (  # noqa: E402
    And,
    Atom,
    BOTTOM,
    Believes,
    Common,
    Everyone,
    GEq,
    GGt,
    Iff,
    Implies,
    Or,
    Update,
)
from egl.scenarios import build_muddy, two_children  # noqa: E402

AGENTS = ("a", "b", "c")
PROPS = ("p", "q", "m_a")

thresholds = st.fractions(min_value=0, max_value=1, max_denominator=20)
groups = st.frozensets(st.sampled_from(AGENTS), min_size=1)


def psi_formulas(max_leaves: int = 6):
    base = st.one_of(st.sampled_from(PROPS).map(Atom), st.just(BOTTOM))
    return st.recursive(
        base,
        lambda kids: st.one_of(
            st.builds(And, kids, kids),
            st.builds(Implies, kids, kids),
            st.builds(Believes, st.sampled_from(AGENTS), kids),
        ),
        max_leaves=max_leaves,
    )


def gatoms():
    return st.one_of(st.builds(GEq, psi_formulas(3), thresholds), st.builds(GGt, psi_formulas(3), thresholds))


def formulas(max_leaves: int = 12, with_gatoms: bool = True):
    leaves = [st.sampled_from(PROPS).map(Atom), st.just(BOTTOM)]
    if with_gatoms:
        leaves.append(gatoms())
    return st.recursive(
        st.one_of(*leaves),
        lambda kids: st.one_of(
            st.builds(And, kids, kids),
            st.builds(Or, kids, kids),
            st.builds(Implies, kids, kids),
            st.builds(Iff, kids, kids),
            st.builds(Believes, st.sampled_from(AGENTS), kids),
            st.builds(Everyone, groups, kids),
            st.builds(Common, groups, kids),
            st.builds(Update, st.sampled_from(["ann", "A"]), st.sampled_from(["e1", "e2"]), kids),
        ),
        max_leaves=max_leaves,
    )


@pytest.fixture(scope="session")
def muddy():
    return build_muddy(two_children())


def F(p: int, q: int = 1) -> Fraction:
    return Fraction(p, q)
