"""Linear rank 2 intersection types: inference, derivations, and step counting."""

from .infer import InferenceError, InferResult, infer, infer_q
from .reduction import EvalOutcome, is_neutral, is_normal, lo_step, normalize
from .syntax import Abs, App, Var, parse, show
from .unify import UnificationError, unify, unify_q

__all__ = [
    "Abs",
    "App",
    "EvalOutcome",
    "InferResult",
    "InferenceError",
    "UnificationError",
    "Var",
    "infer",
    "infer_q",
    "is_neutral",
    "is_normal",
    "lo_step",
    "normalize",
    "parse",
    "show",
    "unify",
    "unify_q",
]
