"""Announcing 'exactly one child is at least a little muddy'.

Child a hears perfectly; child b mishears with degree 3/4, so b cannot be sure
which of the two announcements was made.  We print the updated model and
compare b's belief about a's mud before and after the update.
"""

from __future__ import annotations

from egl.dynamic import UpdateEvaluator, product_update
from egl.formula import parse_formula
from egl.scenarios import build_announcement, build_muddy, exactly_one_muddy, two_children
from egl.search import format_value


def main() -> None:
    model = build_muddy(two_children())
    ann = build_announcement(exactly_one_muddy())
    for e in ann.events:
        print(f"pre({e}) = {ann.pre[e]}")

    prod = product_update(model, ann)
    print(f"\nproduct states ({len(prod.states)}):", ", ".join(prod.states))

    ev = UpdateEvaluator(model, {"ann": ann})
    before, after = parse_formula("B{b} m_a"), parse_formula("[ann,e1] B{b} m_a")
    print("\nstate      before          after [ann,e1]")
    for s in model.states:
        print(f"{s:<10} {format_value(ev.value(s, before)):<15} {format_value(ev.value(s, after))}")


if __name__ == "__main__":
    main()
