"""Leftmost-outermost evaluation with exact step counting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .syntax import Abs, App, Term, Var, subst

NORMAL = "Normal"
FUEL_EXHAUSTED = "FuelExhausted"


class AlreadyNormal(Exception):
    pass


def is_neutral(term: Term) -> bool:
    """A variable applied to zero or more normal arguments."""
    while isinstance(term, App):
        if not is_normal(term.arg):
            return False
        term = term.fun
    return isinstance(term, Var)


def is_normal(term: Term) -> bool:
    while isinstance(term, Abs):
        term = term.body
    return is_neutral(term)


def _step(term: Term) -> Optional[Term]:
    if isinstance(term, Var):
        return None
    if isinstance(term, Abs):
        body = _step(term.body)
        return None if body is None else Abs(term.var, body)
    if isinstance(term.fun, Abs):
        return subst(term.fun.body, term.arg, term.fun.var)
    fun = _step(term.fun)
    if fun is not None:
        return App(fun, term.arg)
    # the head is normal and not an abstraction, hence neutral
    arg = _step(term.arg)
    return None if arg is None else App(term.fun, arg)


def lo_step(term: Term) -> Term:
    """One leftmost-outermost step; raises :class:`AlreadyNormal` on normal forms."""
    result = _step(term)
    if result is None:
        raise AlreadyNormal(term)
    return result


@dataclass(frozen=True)
class EvalOutcome:
    result: Term
    steps: int
    status: str


def reduction_sequence(term: Term) -> Iterator[Term]:
    """The successive reducts of ``term`` (excluding ``term`` itself)."""
    while True:
        term = _step(term)
        if term is None:
            return
        yield term


def normalize(term: Term, fuel: int) -> EvalOutcome:
    steps = 0
    while steps < fuel:
        nxt = _step(term)
        if nxt is None:
            return EvalOutcome(term, steps, NORMAL)
        term = nxt
        steps += 1
    status = NORMAL if _step(term) is None else FUEL_EXHAUSTED
    return EvalOutcome(term, steps, status)
