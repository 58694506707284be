"""Command-line front end: ``egl <command> [flags]``.

Exit status is 0 for success (valid, tautology, accepted, no witness), 1 for
a negative answer (invalid, witness found, rejected, regression mismatch) and
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .algebra import NotPropositional, abstract_modalities, chain_tautology
from .dynamic import ActionModel, UpdateEvaluator, load_action, product_update, save_action
from .evaluation import EvaluationError
from .formula import ParseError, format_rational, parse_formula, print_formula
from .model import KripkeModel, ModelError, load_model, save_model
from .proof import DerivationSyntaxError, check_derivation, parse_derivation
from .scenarios import (
    announcement_params_from_dict,
    build_announcement,
    build_muddy,
    exactly_one_muddy,
    muddy_params_from_dict,
    two_children,
)
from .search import falsify, format_value, regression_suite

__all__ = ["main", "run", "build_parser"]

OK, NO, ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        print(text)
        return
    try:
        Path(path).write_text(text + "\n", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _model(args: argparse.Namespace) -> KripkeModel:
    if not args.model:
        raise InputError("--model is required")
    return load_model(_read(args.model))


def _actions(paths: Sequence[str] | None) -> dict[str, ActionModel]:
    registry: dict[str, ActionModel] = {}
    for path in paths or ():
        a = load_action(_read(path), name=Path(path).stem)
        if a.name in registry:
            raise InputError(f"two action models named {a.name!r}")
        registry[a.name] = a
    return registry


def _params(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: parameter file must be a JSON object")
    return doc


def _evaluator(args: argparse.Namespace):
    m = _model(args)
    f = parse_formula(args.formula)
    ev = UpdateEvaluator(m, _actions(args.action))
    ev.check_vocabulary(f)
    if args.state is not None and args.state not in m.states:
        raise InputError(f"unknown state {args.state!r}")
    return m, f, ev


# --------------------------------------------------------------------------
# commands


def cmd_eval(args: argparse.Namespace) -> int:
    m, f, ev = _evaluator(args)
    if args.state is not None:
        print(format_value(ev.value(args.state, f)))
    else:
        for s, v in ev.degrees(f).items():
            print(f"{s}\t{format_value(v)}")
    return OK


def cmd_valid(args: argparse.Namespace) -> int:
    m, f, ev = _evaluator(args)
    states = [args.state] if args.state is not None else list(m.states)
    failing = [(s, ev.value(s, f)) for s in states if ev.value(s, f) != 1]
    where = f"at {args.state}" if args.state is not None else "in the model"
    if not failing:
        print(f"valid {where}")
        return OK
    print(f"not valid {where}")
    for s, v in failing:
        print(f"{s}\t{format_value(v)}")
    return NO


def cmd_update(args: argparse.Namespace) -> int:
    m = _model(args)
    actions = _actions(args.action)
    if not actions:
        raise InputError("--action is required")
    for a in actions.values():
        m = product_update(m, a)
    if args.out:
        _write(args.out, save_model(m))
        print(f"product with {len(m.states)} states written to {args.out}")
    else:
        print(save_model(m))
    return OK


def cmd_taut(args: argparse.Namespace) -> int:
    f = parse_formula(args.formula)
    try:
        result = chain_tautology(f)
    except NotPropositional:
        template, mapping = abstract_modalities(f)
        for k, g in mapping.items():
            print(f"{k} := {print_formula(g)}")
        print(f"skeleton: {print_formula(template)}")
        result = chain_tautology(template)
    if result:
        print("tautology")
        return OK
    shown = ", ".join(f"{k}={format_rational(v)}" for k, v in result.counter_valuation.items())
    print(f"not a tautology: value {format_value(result.value)} at {shown}")
    return NO


def cmd_prove(args: argparse.Namespace) -> int:
    if not args.derivation:
        raise InputError("--derivation is required")
    d = parse_derivation(_read(args.derivation), args.system)
    premises = [parse_formula(p) for p in args.premise or ()]
    verdict = check_derivation(d, premises)
    print(verdict)
    if verdict.counter_valuation:
        shown = ", ".join(f"{k}={format_rational(v)}" for k, v in verdict.counter_valuation.items())
        print(f"counter-valuation: {shown}")
    return OK if verdict else NO


def cmd_muddy(args: argparse.Namespace) -> int:
    doc = _params(args.params)
    params = muddy_params_from_dict(doc) if "visual" in doc else two_children()
    m = build_muddy(params)
    _write(args.out, save_model(m))
    if args.out:
        print(f"muddy model with {len(m.states)} states written to {args.out}")
    if args.action_out:
        ann = announcement_params_from_dict(doc) if "hearing" in doc else exactly_one_muddy()
        _write(args.action_out, save_action(build_announcement(ann)))
        print(f"announcement with {len(ann.events)} events written to {args.action_out}")
    return OK


def cmd_falsify(args: argparse.Namespace) -> int:
    f = parse_formula(args.formula)
    if args.budget < 1:
        raise InputError("--budget must be at least 1")
    if args.grid < 1:
        raise InputError("--grid must be at least 1")
    w = falsify(
        f,
        args.budget,
        reflexive=args.reflexive,
        seed=args.seed,
        grid=args.grid,
        actions=_actions(args.action),
    )
    if w is None:
        print(f"no witness in {args.budget} models")
        return OK
    print(f"witness: {w}")
    if args.out:
        _write(args.out, save_model(w.model))
        print(f"witness model written to {args.out}")
    else:
        print(save_model(w.model))
    return NO


def cmd_regress(args: argparse.Namespace) -> int:
    doc = _params(args.params)
    report = regression_suite(muddy_params_from_dict(doc) if doc else None)
    print(report)
    print("all values match" if report.ok else f"{len(report.mismatches)} mismatch(es)")
    return OK if report.ok else NO


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egl", description="Epistemic Goedel logic: evaluation, updates, proofs, search."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        return p

    def formula(p: argparse.ArgumentParser) -> None:
        p.add_argument("--formula", required=True, help="formula text")

    def action(p: argparse.ArgumentParser, help: str = "action model JSON (repeatable)") -> None:
        p.add_argument("--action", action="append", metavar="FILE", help=help)

    for name, func, help in (
        ("eval", cmd_eval, "truth degree of a formula"),
        ("valid", cmd_valid, "check that a formula has degree 1"),
    ):
        p = add(name, func, help)
        p.add_argument("--model", metavar="FILE")
        p.add_argument("--state", help="state name (default: all states)")
        formula(p)
        action(p)

    p = add("update", cmd_update, "product update of a model with action models")
    p.add_argument("--model", metavar="FILE")
    action(p, "action model JSON; repeated flags update in sequence")
    p.add_argument("--out", metavar="FILE")

    p = add("taut", cmd_taut, "Goedel tautology test (modal subformulas are abstracted)")
    formula(p)

    p = add("prove", cmd_prove, "check a Hilbert derivation")
    p.add_argument("--derivation", metavar="FILE")
    p.add_argument("--system", choices=["BF", "TF"], default="BF")
    p.add_argument("--premise", action="append", metavar="FORMULA")

    p = add("muddy", cmd_muddy, "build the fuzzy muddy children model")
    p.add_argument("--params", metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--action-out", metavar="FILE", help="also write the announcement action model")

    p = add("falsify", cmd_falsify, "search random models for a counterexample")
    formula(p)
    p.add_argument("--budget", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--grid", type=int, default=4)
    p.add_argument("--reflexive", action="store_true")
    action(p)
    p.add_argument("--out", metavar="FILE", help="write the witness model here")

    p = add("regress", cmd_regress, "counterexample regression on the muddy model")
    p.add_argument("--params", metavar="FILE")

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (
        InputError,
        ParseError,
        ModelError,
        EvaluationError,
        DerivationSyntaxError,
        KeyError,
        ValueError,
    ) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"egl {args.command}: error: {message}", file=sys.stderr)
        return ERROR


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
