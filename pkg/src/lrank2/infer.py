"""Type inference for linear rank 2 intersection types, with optional step counting.

``infer`` computes an environment and a type for a term; ``infer_q`` also
computes the index that predicts the number of leftmost-outermost steps.
Both run the same recursion; only the unifier call and the index
bookkeeping differ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Optional

from . import syntax
from .syntax import Abs, App, Term, Var
from .types import (
    Arrow,
    Decl,
    Env,
    Lolli,
    TVar,
    Type,
    TypeSubst,
    apply_subst,
    canonicalize,
    env_remove,
    env_sum,
    env_vars,
    is_linear_type,
    rename_vars,
    type_vars,
)
from .unify import UnificationError, unify, unify_q

NOT_LAMBDA_I = "not-lambda-I"
NO_RULE = "no-rule"
UNIFICATION = "unification"


class InferenceError(Exception):
    """The term is not typable. ``path`` leads from the root to the failing subterm."""

    def __init__(self, kind: str, term: Term, path: tuple[str, ...], detail: str = ""):
        where = "/".join(path) or "root"
        msg = f"{kind} at {where}: {syntax.show(term)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.kind = kind
        self.term = term
        self.path = path


@dataclass(frozen=True)
class InferResult:
    env: Env
    type: Type
    steps: int = 0

    def canonical(self) -> InferResult:
        env, t = canonicalize(self.env, self.type)
        return InferResult(env, t, self.steps)


class VarSupply:
    """Monotone source of fresh type variables ``a1, a2, ...``."""

    def __init__(self, start: int = 1, prefix: str = "a"):
        self._count = itertools.count(start)
        self.prefix = prefix

    def new(self) -> TVar:
        return TVar(f"{self.prefix}{next(self._count)}")


@dataclass
class Node:
    """One step of an inference run: the rule used, its result, and the substitution it computed."""

    term: Term
    rule: str
    env: Env
    type: Type
    steps: int = 0
    subst: TypeSubst = field(default_factory=dict)
    children: list = field(default_factory=list)

    def result(self) -> InferResult:
        return InferResult(self.env, self.type, self.steps)


def _node_vars(node: Node) -> list[str]:
    names = list(env_vars(node.env)) + list(type_vars(node.type))
    for a, t in node.subst.items():
        names.append(a)
        names.extend(type_vars(t))
    for child in node.children:
        names.extend(_node_vars(child))
    return names


def _rename_node(node: Node, mapping: dict[str, str]) -> Node:
    return replace(
        node,
        env=rename_vars(node.env, mapping),
        type=rename_vars(node.type, mapping),
        subst={mapping.get(a, a): rename_vars(t, mapping) for a, t in node.subst.items()},
        children=[_rename_node(c, mapping) for c in node.children],
    )


def _instantiate_node(node: Node, supply: VarSupply) -> Node:
    mapping = {a: supply.new().name for a in dict.fromkeys(_node_vars(node))}
    return _rename_node(node, mapping)


def fresh_instantiate(result: InferResult, supply: Optional[VarSupply] = None) -> InferResult:
    """Rename every type variable of ``result`` to a fresh one."""
    if supply is None:
        used = [int(a[1:]) for a in env_vars(result.env) + type_vars(result.type) if a[1:].isdigit()]
        supply = VarSupply(start=max(used, default=0) + 1)
    names = dict.fromkeys(env_vars(result.env) + type_vars(result.type))
    mapping = {a: supply.new().name for a in names}
    return InferResult(rename_vars(result.env, mapping), rename_vars(result.type, mapping), result.steps)


class _Run:
    def __init__(self, quantitative: bool):
        self.quantitative = quantitative
        self.supply = VarSupply()

    def unify(self, problem, term, path) -> tuple[TypeSubst, int]:
        try:
            if self.quantitative:
                return unify_q(problem)
            return unify(problem), 0
        except UnificationError as err:
            raise InferenceError(UNIFICATION, term, path, str(err)) from err

    def infer(self, term: Term, path: tuple[str, ...] = ()) -> Node:
        if isinstance(term, Var):
            a = self.supply.new()
            return Node(term, "var", Env([Decl(term.name, (a,))]), a)

        if isinstance(term, Abs):
            body = self.infer(term.body, path + ("body",))
            seq = body.env.decl(term.var)
            if seq is None:
                raise InferenceError(NOT_LAMBDA_I, term, path, f"{term.var} unused")
            env = env_remove(body.env, term.var)
            if len(seq.types) == 1:
                return Node(term, "lolli-intro", env, Lolli(seq.types[0], body.type), body.steps, children=[body])
            return Node(term, "arrow-intro", env, Arrow(seq.types, body.type), body.steps, children=[body])

        head = self.infer(term.fun, path + ("fun",))
        arg = self.infer(term.arg, path + ("arg",))
        if not is_linear_type(arg.type):
            raise InferenceError(NO_RULE, term, path, f"argument type {arg.type} is not linear")
        t = head.type
        if isinstance(t, TVar):
            a2, a3 = self.supply.new(), self.supply.new()
            s, _ = self.unify(((t, Lolli(a2, a3)), (arg.type, a2)), term, path)
            return Node(
                term, "app-var",
                apply_subst(s, env_sum(head.env, arg.env)), apply_subst(s, a3),
                head.steps + arg.steps, s, [head, arg],
            )
        if isinstance(t, Arrow):
            args = [_instantiate_node(arg, self.supply) for _ in t.left]
            problem = tuple((a.type, expected) for a, expected in zip(args, t.left))
            s, b3 = self.unify(problem, term, path)
            env = head.env
            for a in args:
                env = env_sum(env, a.env)
            steps = head.steps + sum(a.steps for a in args) + b3 + 1 if self.quantitative else 0
            return Node(term, "app-arrow", apply_subst(s, env), apply_subst(s, t.right), steps, s, [head] + args)
        if isinstance(t, Lolli):
            s, b3 = self.unify(((arg.type, t.left),), term, path)
            steps = head.steps + arg.steps + b3 + 1 if self.quantitative else 0
            return Node(
                term, "app-lolli",
                apply_subst(s, env_sum(head.env, arg.env)), apply_subst(s, t.right),
                steps, s, [head, arg],
            )
        raise InferenceError(NO_RULE, term, path, f"head type {t}")


def infer_trace(term: Term, quantitative: bool = False) -> Node:
    """Full inference tree for ``term``; raises :class:`InferenceError`."""
    return _Run(quantitative).infer(term)


def infer(term: Term) -> InferResult:
    return infer_trace(term).result()


def infer_q(term: Term) -> InferResult:
    return infer_trace(term, quantitative=True).result()
