"""Epistemic Goedel logic: formulas, fuzzy Kripke models, exact evaluation,
action-model updates, Hilbert derivation checking and counterexample search.

Truth degrees are exact ``fractions.Fraction`` values throughout.
"""

from __future__ import annotations

from .algebra import TautologyResult, chain_tautology
from .dynamic import (
    ActionModel,
    ProductModel,
    degree_vector,
    eval_gformula,
    eval_update,
    evaluate,
    load_action,
    product_update,
    save_action,
)
from .evaluation import EvaluationError, Evaluator, common_orbit, eval_common
from .formula import (
    And,
    Atom,
    Believes,
    Bottom,
    Common,
    Everyone,
    Formula,
    GEq,
    GGt,
    Iff,
    Implies,
    Or,
    ParseError,
    Update,
    parse_formula,
    parse_gformula,
    print_formula,
)
from .model import KripkeModel, ModelError, load_model, random_model, save_model, validate
from .proof import System, check_derivation, parse_derivation, soundness_crosscheck
from .scenarios import build_announcement, build_muddy, exactly_one_muddy, two_children
from .search import falsify, regression_suite

__all__ = [
    "ActionModel", "And", "Atom", "Believes", "Bottom", "Common", "EvaluationError",
    "Evaluator", "Everyone", "Formula", "GEq", "GGt", "Iff", "Implies", "KripkeModel",
    "ModelError", "Or", "ParseError", "ProductModel", "System", "TautologyResult", "Update",
    "build_announcement", "build_muddy", "chain_tautology", "check_derivation",
    "common_orbit", "degree_vector", "eval_common", "eval_gformula", "eval_update",
    "evaluate", "exactly_one_muddy", "falsify", "load_action", "load_model",
    "parse_derivation", "parse_formula", "parse_gformula", "print_formula",
    "product_update", "random_model", "regression_suite", "save_action", "save_model",
    "soundness_crosscheck", "two_children", "validate",
]
