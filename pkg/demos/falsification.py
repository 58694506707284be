"""Random search for counterexamples.

Introspection fails on some small grid-valued model; the truth axiom fails
only once reflexivity is dropped.  Each witness is replayed to confirm the
reported value.
"""

from __future__ import annotations

from egl.formula import parse_formula
from egl.model import save_model
from egl.search import falsify

CASES = [
    ("B{a} p -> B{a} B{a} p", False),
    ("B{a}(p & q) <-> B{a} p & B{a} q", False),
    ("B{a} p -> p", True),
    ("B{a} p -> p", False),
]


def main() -> None:
    for text, reflexive in CASES:
        w = falsify(parse_formula(text), budget=500, reflexive=reflexive, seed=0)
        kind = "reflexive" if reflexive else "all"
        if w is None:
            print(f"{text:<35} [{kind}] no counterexample in 500 models")
            continue
        print(f"{text:<35} [{kind}] {w} (replay: {w.replay()})")

    w = falsify(parse_formula("B{a} p -> B{a} B{a} p"), budget=500, seed=0)
    print("\nwitness model:\n" + save_model(w.model))


if __name__ == "__main__":
    main()
