"""First-order unification over linear types, plus one-sided matching.

Problems are tuples of ``(lhs, rhs)`` equations. :func:`step` rewrites one
equation: rules are tried in the order delete, decompose, orient, eliminate,
fail, and for the first rule that fits anywhere the leftmost fitting
equation is rewritten. ``unify_q`` additionally counts decompositions.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Mapping, Optional, Sequence

from .types import (
    Arrow,
    Env,
    Lolli,
    Tight,
    TVar,
    Type,
    TypeSubst,
    apply_subst,
    is_linear_type,
    type_vars,
)

Equation = tuple  # (Type, Type)
Problem = tuple  # tuple[Equation, ...]

DELETE = "delete"
DECOMPOSE = "decompose"
ORIENT = "orient"
ELIMINATE = "eliminate"


class UnificationError(Exception):
    """The problem has no unifier. ``reason`` is ``"occurs-check"`` (or ``"clash"``, unused)."""

    def __init__(self, reason: str, equation: Equation):
        lhs, rhs = equation
        super().__init__(f"{reason}: {lhs} = {rhs}")
        self.reason = reason
        self.equation = equation


def _vars_of_problem(problem: Sequence[Equation], skip: int = -1) -> set[str]:
    found: set[str] = set()
    for i, (lhs, rhs) in enumerate(problem):
        if i != skip:
            found.update(type_vars(lhs))
            found.update(type_vars(rhs))
    return found


def step(problem: Problem) -> Optional[tuple[str, Problem]]:
    """One rewrite. Returns ``(rule, new_problem)``, or None when no rule applies."""
    problem = tuple(problem)
    for i, (lhs, rhs) in enumerate(problem):
        if lhs == rhs:
            return DELETE, problem[:i] + problem[i + 1:]
    for i, (lhs, rhs) in enumerate(problem):
        if isinstance(lhs, Lolli) and isinstance(rhs, Lolli):
            return DECOMPOSE, problem[:i] + ((lhs.left, rhs.left), (lhs.right, rhs.right)) + problem[i + 1:]
    for i, (lhs, rhs) in enumerate(problem):
        if isinstance(lhs, Lolli) and isinstance(rhs, TVar):
            return ORIENT, problem[:i] + ((rhs, lhs),) + problem[i + 1:]
    for i, (lhs, rhs) in enumerate(problem):
        if isinstance(lhs, TVar) and lhs.name not in type_vars(rhs) and lhs.name in _vars_of_problem(problem, i):
            s = {lhs.name: rhs}
            return ELIMINATE, tuple(
                eq if j == i else (apply_subst(s, eq[0]), apply_subst(s, eq[1])) for j, eq in enumerate(problem)
            )
    for lhs, rhs in problem:
        if isinstance(lhs, TVar) and lhs.name in type_vars(rhs) and lhs != rhs:
            raise UnificationError("occurs-check", (lhs, rhs))
    return None


def is_solved(problem: Problem) -> bool:
    lhs_names = []
    for lhs, _ in problem:
        if not isinstance(lhs, TVar):
            return False
        lhs_names.append(lhs.name)
    if len(set(lhs_names)) != len(lhs_names):
        return False
    rhs_vars = {a for _, rhs in problem for a in type_vars(rhs)}
    return not rhs_vars & set(lhs_names)


def trace(problem: Problem) -> Iterator[tuple[str, Problem]]:
    """Every ``(rule, problem)`` visited on the way to a normal form."""
    problem = tuple(problem)
    for lhs, rhs in problem:
        if not (is_linear_type(lhs) and is_linear_type(rhs)):
            raise TypeError(f"unification is over linear types only: {lhs} = {rhs}")
    while True:
        nxt = step(problem)
        if nxt is None:
            return
        yield nxt
        problem = nxt[1]


def _solve(problem: Problem) -> tuple[TypeSubst, int]:
    count = 0
    final = tuple(problem)
    for rule, final in trace(problem):
        if rule == DECOMPOSE:
            count += 1
    if not is_solved(final):
        # a normal form that is not solved would need a constructor clash,
        # which the single-constructor signature rules out
        raise AssertionError(f"unsolved normal form {final}")
    return {lhs.name: rhs for lhs, rhs in final}, count


def unify(problem: Problem) -> TypeSubst:
    """Most general unifier of ``problem``; raises :class:`UnificationError`."""
    return _solve(problem)[0]


def unify_q(problem: Problem) -> tuple[TypeSubst, int]:
    """Like :func:`unify`, also returning how many times decomposition fired."""
    return _solve(problem)


# ---------------------------------------------------------------------------
# matching

def match(pattern: Type, target: Type, subst: Optional[Mapping[str, Type]] = None) -> Optional[TypeSubst]:
    """Positional one-sided unification: S with S(pattern) == target, extending ``subst``."""
    s = dict(subst or {})
    todo = [(pattern, target)]
    while todo:
        p, t = todo.pop()
        if isinstance(p, TVar):
            bound = s.get(p.name)
            if bound is None:
                s[p.name] = t
            elif bound != t:
                return None
        elif isinstance(p, Tight):
            if p != t:
                return None
        elif isinstance(p, Lolli):
            if not isinstance(t, Lolli):
                return None
            todo += [(p.left, t.left), (p.right, t.right)]
        elif isinstance(p, Arrow):
            if not isinstance(t, Arrow) or len(p.left) != len(t.left):
                return None
            todo += list(zip(p.left, t.left)) + [(p.right, t.right)]
    return s


def match_ac(pattern, target, subst: Optional[Mapping[str, Type]] = None) -> Iterator[TypeSubst]:
    """All extensions S of ``subst`` with S(pattern) equal to target modulo AC of intersections.

    Works on types, sequences (matched as multisets) and plain environments.
    """
    s = dict(subst or {})
    if isinstance(pattern, Env):
        if sorted(pattern.dom()) != sorted(target.dom()):
            return
        yield from _match_all([(d.types, target.decl(d.var).types) for d in pattern], s)
    elif isinstance(pattern, tuple):
        if len(pattern) != len(target):
            return
        for perm in _distinct_permutations(target):
            yield from _match_all(list(zip(pattern, perm)), s)
    elif isinstance(pattern, Arrow):
        if isinstance(target, Arrow) and len(target.left) == len(pattern.left):
            for s1 in match_ac(pattern.left, target.left, s):
                yield from match_ac(pattern.right, target.right, s1)
    elif isinstance(pattern, Lolli):
        if isinstance(target, Lolli):
            for s1 in match_ac(pattern.left, target.left, s):
                yield from match_ac(pattern.right, target.right, s1)
    else:
        m = match(pattern, target, s)
        if m is not None:
            yield m


def _match_all(pairs: list, s: TypeSubst) -> Iterator[TypeSubst]:
    if not pairs:
        yield s
        return
    (p, t), rest = pairs[0], pairs[1:]
    for s1 in match_ac(p, t, s):
        yield from _match_all(rest, s1)


def _distinct_permutations(items: tuple) -> Iterator[tuple]:
    seen = set()
    for perm in permutations(items):
        if perm not in seen:
            seen.add(perm)
            yield perm


def is_instance(general: tuple[Env, Type], specific: tuple[Env, Type]) -> Optional[TypeSubst]:
    """A substitution S with S(general) equal to ``specific`` up to AC and env order, if any."""
    g_env, g_type = general
    t_env, t_type = specific
    for s in match_ac(g_type, t_type):
        for s2 in match_ac(g_env, t_env, s):
            return s2
    return None
