"""Common knowledge as the infimum of iterated 'everyone knows'.

For a few formulas on the muddy model we print the orbit E^1, E^2, ... until a
vector repeats, followed by the common-knowledge degree, which is the
entrywise minimum over the orbit.
"""

from __future__ import annotations

from egl.evaluation import common_orbit, degree_vector
from egl.formula import Common, parse_formula
from egl.scenarios import build_muddy, two_children

CASES = [
    (["a", "b"], "m_a | m_b"),
    (["b"], "m_a"),
    (["a", "b"], "m_a -> B{b} m_a"),
]


def main() -> None:
    model = build_muddy(two_children())
    for group, text in CASES:
        phi = parse_formula(text)
        orbit = common_orbit(model, group, phi)
        common = degree_vector(model, Common(frozenset(group), phi))
        print(f"\nC{{{','.join(group)}}} ({text})")
        print("  state      " + "".join(f"E^{i + 1:<7}" for i in range(len(orbit))) + "C")
        for s in model.states:
            row = "".join(f"{str(v[s]):<9}" for v in orbit)
            print(f"  {s:<10} {row}{common[s]}")


if __name__ == "__main__":
    main()
