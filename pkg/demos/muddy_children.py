"""Fuzzy muddy children: how much does each child know about the mud?

Two children with mud levels in {0, 1/2, 1}.  Child a sees poorly
(visual factor 2/5), child b sees well (9/10).  We print the belief degrees
and the six introspection-style schemes that fail on this model.
"""

from __future__ import annotations

from egl.evaluation import Evaluator
from egl.formula import parse_formula
from egl.scenarios import build_muddy, two_children
from egl.search import format_value, regression_suite


def main() -> None:
    model = build_muddy(two_children())
    ev = Evaluator(model)

    print("states:", ", ".join(model.states))
    for text in ("B{b} m_a", "B{a} m_b", "B{a} B{b} m_a"):
        f = parse_formula(text)
        print(f"\n{text}")
        for s, v in ev.degrees(f).items():
            print(f"  {s:<10} {format_value(v)}")

    print("\nschemes that are not valid, with the witnessing state:")
    print(regression_suite())


if __name__ == "__main__":
    main()
