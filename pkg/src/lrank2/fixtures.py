"""Hand-written derivations used as test fixtures and as CLI examples.

Each fixture spells out every judgment, so checking one exercises the
checker against a tree that was not produced by this package.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .deriv import (
    ARROW_ELIM,
    ARROW_INTRO,
    ARROW_INTRO_T,
    AXIOM,
    CONTRACTION,
    EXCHANGE,
    LOLLI_ELIM,
    LOLLI_ELIM_T,
    LOLLI_INTRO,
    LOLLI_INTRO_T,
    Derivation,
    Judgment,
    to_json,
)
from .syntax import parse
from .types import Decl, Env, parse_seq, parse_type


def J(env: list, term: str, type_: str, multitype: Optional[str] = None, index: Optional[int] = None) -> Judgment:
    """Judgment from strings; ``env`` holds ``(var, types)`` or ``(var, types, multitypes)``."""
    decls = [Decl(item[0], parse_seq(item[1]), parse_seq(item[2]) if len(item) > 2 else None) for item in env]
    mt = parse_type(multitype) if multitype is not None else None
    return Judgment(Env(decls), parse(term), parse_type(type_), mt, index)


def D(rule: str, conclusion: Judgment, *premises: Derivation) -> Derivation:
    return Derivation(rule, conclusion, premises)


# A = a -o a, and "Abs -o Abs" plays the same role on the multi-type side.
A = "(a -o a)"
AA = "(Abs -o Abs)"


def self_application_plain() -> Derivation:
    """(\\x. x x) (\\y. y) in the plain system."""
    xx = D(CONTRACTION, J([("x", f"({A} -o {A}) & {A}")], "x x", A),
           D(LOLLI_ELIM, J([("x1", f"{A} -o {A}"), ("x2", A)], "x1 x2", A),
             D(AXIOM, J([("x1", f"{A} -o {A}")], "x1", f"{A} -o {A}")),
             D(AXIOM, J([("x2", A)], "x2", A))))
    head = D(ARROW_INTRO, J([], "\\x. x x", f"({A} -o {A}) & {A} -> {A}"), xx)
    id_big = D(LOLLI_INTRO, J([], "\\y. y", f"{A} -o {A}"), D(AXIOM, J([("y", A)], "y", A)))
    id_small = D(LOLLI_INTRO, J([], "\\y. y", A), D(AXIOM, J([("y", "a")], "y", "a")))
    return D(ARROW_ELIM, J([], "(\\x. x x) (\\y. y)", A), head, id_big, id_small)


def _identity_abs() -> Derivation:
    """[] |-0 \\y. y : a -o a | Abs"""
    return D(LOLLI_INTRO_T, J([], "\\y. y", A, "Abs", 0),
             D(AXIOM, J([("y", "a", "Neutral")], "y", "a", "Neutral", 0)))


def _identity_applied() -> Derivation:
    """[] |-1 \\y. y : A -o A | Abs -o Abs"""
    return D(LOLLI_INTRO, J([], "\\y. y", f"{A} -o {A}", AA, 1),
             D(AXIOM, J([("y", A, "Abs")], "y", A, "Abs", 0)))


def three_step_tight() -> Derivation:
    """(\\x1. (\\x2. x2 x1) x1) (\\y. y), index 3.

    The body ``x2 x3`` has environment [x2, x3]; an Exchange moves x2 last
    before it is abstracted.
    """
    x2_ax = D(AXIOM, J([("x2", f"{A} -o {A}", AA)], "x2", f"{A} -o {A}", AA, 0))
    x3_ax = D(AXIOM, J([("x3", A, "Abs")], "x3", A, "Abs", 0))
    app = D(LOLLI_ELIM, J([("x2", f"{A} -o {A}", AA), ("x3", A, "Abs")], "x2 x3", A, "Abs", 0), x2_ax, x3_ax)
    swapped = D(EXCHANGE, J([("x3", A, "Abs"), ("x2", f"{A} -o {A}", AA)], "x2 x3", A, "Abs", 0), app)
    inner = D(LOLLI_INTRO, J([("x3", A, "Abs")], "\\x2. x2 x3", f"({A} -o {A}) -o {A}", f"{AA} -o Abs", 1), swapped)
    x4_ax = D(AXIOM, J([("x4", f"{A} -o {A}", AA)], "x4", f"{A} -o {A}", AA, 0))
    redex = D(LOLLI_ELIM,
              J([("x3", A, "Abs"), ("x4", f"{A} -o {A}", AA)], "(\\x2. x2 x3) x4", A, "Abs", 1),
              inner, x4_ax)
    contracted = D(CONTRACTION,
                   J([("x1", f"{A} & ({A} -o {A})", f"Abs & {AA}")], "(\\x2. x2 x1) x1", A, "Abs", 1),
                   redex)
    phi = D(ARROW_INTRO,
            J([], "\\x1. (\\x2. x2 x1) x1", f"{A} & ({A} -o {A}) -> {A}", f"Abs & {AA} -> Abs", 2),
            contracted)
    return D(ARROW_ELIM, J([], "(\\x1. (\\x2. x2 x1) x1) (\\y. y)", A, "Abs", 3),
             phi, _identity_abs(), _identity_applied())


def self_application_tight() -> Derivation:
    """(\\x. x x) (\\y. y), index 2."""
    app = D(LOLLI_ELIM, J([("x1", f"{A} -o {A}", AA), ("x2", A, "Abs")], "x1 x2", A, "Abs", 0),
            D(AXIOM, J([("x1", f"{A} -o {A}", AA)], "x1", f"{A} -o {A}", AA, 0)),
            D(AXIOM, J([("x2", A, "Abs")], "x2", A, "Abs", 0)))
    contracted = D(CONTRACTION, J([("x", f"({A} -o {A}) & {A}", f"{AA} & Abs")], "x x", A, "Abs", 0), app)
    head = D(ARROW_INTRO, J([], "\\x. x x", f"({A} -o {A}) & {A} -> {A}", f"{AA} & Abs -> Abs", 1), contracted)
    return D(ARROW_ELIM, J([], "(\\x. x x) (\\y. y)", A, "Abs", 2), head, _identity_applied(), _identity_abs())


def identity_on_variable_tight() -> Derivation:
    """(\\x. x) y, index 1."""
    head = D(LOLLI_INTRO, J([], "\\x. x", A, "Neutral -o Neutral", 1),
             D(AXIOM, J([("x", "a", "Neutral")], "x", "a", "Neutral", 0)))
    arg = D(AXIOM, J([("y", "a", "Neutral")], "y", "a", "Neutral", 0))
    return D(LOLLI_ELIM, J([("y", "a", "Neutral")], "(\\x. x) y", "a", "Neutral", 1), head, arg)


def identity_tight() -> Derivation:
    """\\y. y, index 0."""
    return _identity_abs()


def neutral_application_tight() -> Derivation:
    """x y, index 0."""
    return D(LOLLI_ELIM_T, J([("x", "a -o b", "Neutral"), ("y", "a", "Neutral")], "x y", "b", "Neutral", 0),
             D(AXIOM, J([("x", "a -o b", "Neutral")], "x", "a -o b", "Neutral", 0)),
             D(AXIOM, J([("y", "a", "Neutral")], "y", "a", "Neutral", 0)))


def delta_tight() -> Derivation:
    """\\x. x x, index 0."""
    app = D(LOLLI_ELIM_T, J([("x1", "a -o b", "Neutral"), ("x2", "a", "Neutral")], "x1 x2", "b", "Neutral", 0),
            D(AXIOM, J([("x1", "a -o b", "Neutral")], "x1", "a -o b", "Neutral", 0)),
            D(AXIOM, J([("x2", "a", "Neutral")], "x2", "a", "Neutral", 0)))
    contracted = D(CONTRACTION, J([("x", "(a -o b) & a", "Neutral & Neutral")], "x x", "b", "Neutral", 0), app)
    return D(ARROW_INTRO_T, J([], "\\x. x x", "(a -o b) & a -> b", "Abs", 0), contracted)


def church_two_tight() -> Derivation:
    """\\f. \\x. f (f x), index 0."""
    inner = D(LOLLI_ELIM_T, J([("f2", "a -o b", "Neutral"), ("x", "a", "Neutral")], "f2 x", "b", "Neutral", 0),
              D(AXIOM, J([("f2", "a -o b", "Neutral")], "f2", "a -o b", "Neutral", 0)),
              D(AXIOM, J([("x", "a", "Neutral")], "x", "a", "Neutral", 0)))
    outer = D(LOLLI_ELIM_T,
              J([("f1", "b -o c", "Neutral"), ("f2", "a -o b", "Neutral"), ("x", "a", "Neutral")],
                "f1 (f2 x)", "c", "Neutral", 0),
              D(AXIOM, J([("f1", "b -o c", "Neutral")], "f1", "b -o c", "Neutral", 0)),
              inner)
    contracted = D(CONTRACTION,
                   J([("f", "(b -o c) & (a -o b)", "Neutral & Neutral"), ("x", "a", "Neutral")],
                     "f (f x)", "c", "Neutral", 0),
                   outer)
    lam_x = D(LOLLI_INTRO_T, J([("f", "(b -o c) & (a -o b)", "Neutral & Neutral")], "\\x. f (f x)", "a -o c", "Abs", 0),
              contracted)
    return D(ARROW_INTRO_T, J([], "\\f. \\x. f (f x)", "(b -o c) & (a -o b) -> a -o c", "Abs", 0), lam_x)


PLAIN = {
    "self_application": self_application_plain,
}

TIGHT = {
    "three_step": three_step_tight,
    "self_application": self_application_tight,
    "identity_on_variable": identity_on_variable_tight,
    "identity": identity_tight,
    "neutral_application": neutral_application_tight,
    "delta": delta_tight,
    "church_two": church_two_tight,
}


def plain_fixtures() -> dict[str, Derivation]:
    return {name: make() for name, make in PLAIN.items()}


def tight_fixtures() -> dict[str, Derivation]:
    return {name: make() for name, make in TIGHT.items()}


def dump(directory: Path) -> list[Path]:
    """Write every fixture as ``plain_<name>.json`` / ``tight_<name>.json``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for prefix, table in (("plain", plain_fixtures()), ("tight", tight_fixtures())):
        for name, d in table.items():
            path = directory / f"{prefix}_{name}.json"
            path.write_text(json.dumps(to_json(d), indent=2, ensure_ascii=False) + "\n")
            written.append(path)
    return written
