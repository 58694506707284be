"""Truth-degree evaluation over finite fuzzy Kripke models.

Every value the semantics can produce on a model is one of the valuation
entries, ``1 - r_a(s, t)``, 0 or 1.  The evaluator therefore rescales the
model by the lcm of all denominators and computes on plain integers in
``[0, scale]``, which is exact and much faster than ``Fraction`` arithmetic.
Results are converted back to ``Fraction`` at the API boundary.

Degree vectors are memoised per subformula, so one evaluator instance can
answer many queries on the same model cheaply.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import g_iff, g_implies
from .formula import (
    And,
    Atom,
    Bottom,
    Common,
    Everyone,
    Formula,
    GEq,
    GGt,
    Iff,
    Implies,
    Believes,
    Or,
    Update,
    agents as formula_agents,
    atoms as formula_atoms,
)
from .model import KripkeModel

__all__ = [
    "EvaluationError",
    "Evaluator",
    "evaluate",
    "degree_vector",
    "eval_common",
    "common_orbit",
    "is_pointed_valid",
    "is_model_valid",
    "model_scale",
]

Vector = tuple[int, ...]


class EvaluationError(ValueError):
    pass


def model_scale(m: KripkeModel, extra: Iterable[Fraction] = ()) -> int:
    dens = {v.denominator for v in m.valuation.values()}
    for table in m.relations.values():
        dens.update(v.denominator for v in table.values())
    dens.update(v.denominator for v in extra)
    return math.lcm(1, *dens)


class Evaluator:
    """Memoising evaluator bound to one model.

    ``scale`` must be a common multiple of every denominator that can occur;
    subclasses that bring in further values (action models) pass a larger one.
    """

    def __init__(self, model: KripkeModel, scale: int | None = None) -> None:
        self.model = model
        self.scale = scale if scale is not None else model_scale(model)
        self.n = len(model.states)
        self._memo: dict[Formula, Vector] = {}
        self._co = {a: self._complement_matrix(a) for a in model.agents}
        self._props = {
            p: tuple(self._scaled(model.pi(s, p), f"pi({s},{p})") for s in model.states)
            for p in model.props
        }

    def _scaled(self, v: Fraction, where: str) -> int:
        if not 0 <= v <= 1:
            raise EvaluationError(f"{where} = {v} outside [0,1]")
        num, rem = divmod(v.numerator * self.scale, v.denominator)
        if rem:
            raise EvaluationError(f"scale {self.scale} cannot represent {where} = {v}")
        return num

    def _complement_matrix(self, agent: str) -> list[list[int]]:
        m, d = self.model, self.scale
        return [
            [d - self._scaled(m.r(agent, s, t), f"r_{agent}({s},{t})") for t in m.states]
            for s in m.states
        ]

    # conversion helpers
    def to_fraction(self, v: int) -> Fraction:
        return Fraction(v, self.scale)

    def degrees(self, f: Formula) -> dict[str, Fraction]:
        return dict(zip(self.model.states, map(self.to_fraction, self.vector(f))))

    def value(self, state: str, f: Formula) -> Fraction:
        return self.to_fraction(self.vector(f)[self.model.index(state)])

    def check_vocabulary(self, f: Formula) -> None:
        unknown_props = formula_atoms(f) - set(self.model.props)
        if unknown_props:
            raise EvaluationError(f"unknown proposition(s): {', '.join(sorted(unknown_props))}")
        unknown_agents = formula_agents(f) - set(self.model.agents)
        if unknown_agents:
            raise EvaluationError(f"unknown agent(s): {', '.join(sorted(unknown_agents))}")

    # core
    def vector(self, f: Formula) -> Vector:
        cached = self._memo.get(f)
        if cached is None:
            cached = self._compute(f)
            self._memo[f] = cached
        return cached

    def _compute(self, f: Formula) -> Vector:
        d = self.scale
        if isinstance(f, Atom):
            try:
                return self._props[f.name]
            except KeyError:
                raise EvaluationError(f"unknown proposition {f.name!r}") from None
        if isinstance(f, Bottom):
            return (0,) * self.n
        if isinstance(f, And):
            return tuple(map(min, self.vector(f.left), self.vector(f.right)))
        if isinstance(f, Or):
            return tuple(map(max, self.vector(f.left), self.vector(f.right)))
        if isinstance(f, Implies):
            return tuple(g_implies(x, y, d) for x, y in zip(self.vector(f.left), self.vector(f.right)))
        if isinstance(f, Iff):
            return tuple(g_iff(x, y, d) for x, y in zip(self.vector(f.left), self.vector(f.right)))
        if isinstance(f, Believes):
            return self.believe(f.agent, self.vector(f.body))
        if isinstance(f, Everyone):
            return self.everyone(f.group, self.vector(f.body))
        if isinstance(f, Common):
            return self.common(f.group, self.vector(f.body))
        if isinstance(f, GEq):
            g = f.threshold
            return tuple(d if v * g.denominator == g.numerator * d else 0 for v in self.vector(f.body))
        if isinstance(f, GGt):
            g = f.threshold
            return tuple(d if v * g.denominator > g.numerator * d else 0 for v in self.vector(f.body))
        if isinstance(f, Update):
            return self._update(f)
        raise TypeError(f"not a formula: {f!r}")

    def _update(self, f: Update) -> Vector:
        raise EvaluationError(
            f"update [{f.action},{f.event}] needs an action registry; use egl.dynamic.evaluate"
        )

    # modal operators on vectors
    def believe(self, agent: str, v: Sequence[int]) -> Vector:
        try:
            co = self._co[agent]
        except KeyError:
            raise EvaluationError(f"unknown agent {agent!r}") from None
        # min over an empty state set is 1
        return tuple(min(map(max, row, v), default=self.scale) for row in co)

    def everyone(self, group: Iterable[str], v: Sequence[int]) -> Vector:
        vecs = [self.believe(a, v) for a in sorted(group)]
        if not vecs:
            raise EvaluationError("E needs a non-empty agent set")
        return tuple(min(col) for col in zip(*vecs)) if len(vecs) > 1 else vecs[0]

    def orbit(self, group: Iterable[str], v: Sequence[int]) -> list[Vector]:
        """``E v, E E v, ...`` up to (excluding) the first repeated vector.

        Entries stay inside the finite set of base values and complements, so
        the sequence is eventually periodic and this terminates.
        """
        group = sorted(group)
        seen: set[Vector] = set()
        out: list[Vector] = []
        cur = self.everyone(group, v)
        while cur not in seen:
            seen.add(cur)
            out.append(cur)
            cur = self.everyone(group, cur)
        return out

    def common(self, group: Iterable[str], v: Sequence[int]) -> Vector:
        return tuple(min(col) for col in zip(*self.orbit(group, v)))


def evaluate(m: KripkeModel, s: str, f: Formula) -> Fraction:
    """Truth degree ``V_s(f)``."""
    ev = Evaluator(m)
    ev.check_vocabulary(f)
    return ev.value(s, f)


def degree_vector(m: KripkeModel, f: Formula) -> dict[str, Fraction]:
    ev = Evaluator(m)
    ev.check_vocabulary(f)
    return ev.degrees(f)


def eval_common(m: KripkeModel, s: str, group: Iterable[str], f: Formula) -> Fraction:
    return evaluate(m, s, Common(frozenset(group), f))


def common_orbit(m: KripkeModel, group: Iterable[str], f: Formula) -> list[dict[str, Fraction]]:
    """The distinct iterates ``E^1 f, E^2 f, ...`` visited before the cycle closes."""
    ev = Evaluator(m)
    ev.check_vocabulary(f)
    group = frozenset(group)
    unknown = group - set(m.agents)
    if unknown:
        raise EvaluationError(f"unknown agent(s): {', '.join(sorted(unknown))}")
    return [
        dict(zip(m.states, map(ev.to_fraction, vec))) for vec in ev.orbit(group, ev.vector(f))
    ]


def is_pointed_valid(m: KripkeModel, s: str, f: Formula) -> bool:
    return evaluate(m, s, f) == 1


def is_model_valid(m: KripkeModel, f: Formula) -> bool:
    ev = Evaluator(m)
    ev.check_vocabulary(f)
    return all(v == ev.scale for v in ev.vector(f))
