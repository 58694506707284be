"""Checking a small Hilbert derivation, then breaking it.

The derivation turns an instance of the distribution axiom into its
double-negated curried form.  Afterwards one justification is corrupted and
the checker points at that line.
"""

from __future__ import annotations

import random

from egl.model import random_model
from egl.proof import check_derivation, parse_derivation, soundness_crosscheck

DERIVATION = """\
1. B{a} p & B{a}(p -> q) -> B{a} q ; A2
2. (B{a} p & B{a}(p -> q) -> B{a} q) -> (B{a} p -> (B{a}(p -> q) -> B{a} q)) ; A1
3. B{a} p -> (B{a}(p -> q) -> B{a} q) ; MP 1 2
4. (B{a} p -> (B{a}(p -> q) -> B{a} q)) -> ~~(B{a} p -> (B{a}(p -> q) -> B{a} q)) ; A1
5. ~~(B{a} p -> (B{a}(p -> q) -> B{a} q)) ; MP 3 4
6. ~~(B{a} p -> (B{a}(p -> q) -> B{a} q)) -> (~~B{a} p -> (~~B{a}(p -> q) -> ~~B{a} q)) ; A1
7. ~~B{a} p -> (~~B{a}(p -> q) -> ~~B{a} q) ; MP 5 6
"""


def main() -> None:
    d = parse_derivation(DERIVATION, "BF")
    print(DERIVATION)
    print("verdict:", check_derivation(d))

    rng = random.Random(0)
    sample = [random_model(rng, rng.randint(1, 5), ["a"], ["p", "q"]) for _ in range(100)]
    report = soundness_crosscheck(d, sample)
    print(f"soundness cross-check: {report.checked} evaluations, {len(report.violations)} below 1")

    broken = DERIVATION.replace("; MP 3 4", "; MP 1 4")
    print("\nafter changing line 5 to 'MP 1 4':", check_derivation(parse_derivation(broken)))
    print("excluded middle as A1:", check_derivation(parse_derivation("1. p | ~p ; A1")))


if __name__ == "__main__":
    main()
