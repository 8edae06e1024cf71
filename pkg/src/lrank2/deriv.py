"""Explicit typing derivations for the plain and the quantitative systems.

A :class:`Derivation` is a tree of rule instances with every conclusion
written out. :func:`check` and :func:`check_q` validate such trees rule by
rule. :func:`build_from_inference` turns a successful inference run into a
plain derivation, and :func:`enumerate_derivations` searches derivations by
brute force within type-size bounds.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional

from . import syntax
from .infer import Node, infer_trace
from .syntax import Abs, App, Term, Var, alpha_eq, subst_many
from .types import is_tight as _tight
from .types import (
    ABS,
    NEUTRAL,
    Arrow,
    Decl,
    Env,
    Lolli,
    TVar,
    Type,
    ac_normal,
    ac_sorted,
    apply_subst,
    canonical_renaming,
    depth,
    env_append,
    env_sum,
    is_linear_type,
    is_mrank2,
    is_multitype,
    is_rank2,
    parse_seq,
    parse_type,
    rename_vars,
    show_seq,
    show_type,
)

AXIOM = "Axiom"
EXCHANGE = "Exchange"
CONTRACTION = "Contraction"
LOLLI_INTRO = "LolliIntro"
LOLLI_ELIM = "LolliElim"
ARROW_INTRO = "ArrowIntro"
ARROW_ELIM = "ArrowElim"
LOLLI_INTRO_T = "LolliIntroT"
ARROW_INTRO_T = "ArrowIntroT"
LOLLI_ELIM_T = "LolliElimT"
ARROW_ELIM_T = "ArrowElimT"

PLAIN_RULES = frozenset({AXIOM, EXCHANGE, CONTRACTION, LOLLI_INTRO, LOLLI_ELIM, ARROW_INTRO, ARROW_ELIM})
TIGHT_RULES = frozenset({LOLLI_INTRO_T, ARROW_INTRO_T, LOLLI_ELIM_T, ARROW_ELIM_T})


@dataclass(frozen=True)
class Judgment:
    env: Env
    term: Term
    type: Type
    multitype: Optional[Type] = None
    index: Optional[int] = None

    def __str__(self) -> str:
        from .types import show_env

        turnstile = "|-" if self.index is None else f"|-({self.index})"
        text = f"{show_env(self.env)} {turnstile} {syntax.show(self.term)} : {show_type(self.type)}"
        if self.multitype is not None:
            text += f" | {show_type(self.multitype)}"
        return text


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: Judgment
    premises: tuple = ()

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def rules(self) -> list[str]:
        out = [self.rule]
        for p in self.premises:
            out.extend(p.rules())
        return out


class RuleViolation(Exception):
    """A rule instance fails a side condition. ``path`` lists premise indices from the root."""

    def __init__(self, path: tuple[int, ...], rule: str, reason: str, detail: str = ""):
        where = ".".join(map(str, path)) or "root"
        super().__init__(f"{rule} at {where}: {reason}" + (f" ({detail})" if detail else ""))
        self.path = path
        self.rule = rule
        self.reason = reason


# ---------------------------------------------------------------------------
# checking

def check(d: Derivation) -> Judgment:
    """Validate a plain-system derivation and return its root judgment."""
    return _check(d, (), quantitative=False)


def check_q(d: Derivation) -> Judgment:
    """Validate a quantitative derivation (types, multi-types and indices)."""
    return _check(d, (), quantitative=True)


def is_tight(d: Derivation) -> bool:
    c = d.conclusion
    if c.multitype is None or not _tight(c.multitype):
        return False
    return all(decl.multi is not None and _tight(decl.multi) for decl in c.env)


def _check(d: Derivation, path: tuple[int, ...], quantitative: bool) -> Judgment:
    def fail(reason: str, detail: str = "") -> None:
        raise RuleViolation(path, d.rule, reason, detail)

    allowed = PLAIN_RULES | TIGHT_RULES if quantitative else PLAIN_RULES
    if d.rule not in allowed:
        fail("unknown-rule")
    premises = [_check(p, path + (i,), quantitative) for i, p in enumerate(d.premises)]
    c = d.conclusion
    if d.rule in (ARROW_INTRO, ARROW_INTRO_T) and len(premises) == 1 and premises[0].env.decls:
        bound = premises[0].env.decls[-1]
        if len(bound.types) < 2:
            fail("n>=2", f"{bound.var} has {len(bound.types)} type")
    _check_judgment_shape(c, quantitative, fail)

    arity = {AXIOM: 0, EXCHANGE: 1, CONTRACTION: 1, LOLLI_INTRO: 1, ARROW_INTRO: 1, LOLLI_ELIM: 2,
             LOLLI_INTRO_T: 1, ARROW_INTRO_T: 1, LOLLI_ELIM_T: 2}
    if d.rule in arity and len(premises) != arity[d.rule]:
        fail("arity", f"expected {arity[d.rule]} premises, got {len(premises)}")

    def same_mt_index(p: Judgment) -> None:
        if quantitative:
            if p.multitype != c.multitype:
                fail("multitype-mismatch")
            if p.index != c.index:
                fail("index-mismatch")

    if d.rule == AXIOM:
        if len(c.env) != 1 or not isinstance(c.term, Var):
            fail("axiom-shape")
        decl = c.env.decls[0]
        if decl.var != c.term.name or len(decl.types) != 1 or decl.types[0] != c.type:
            fail("axiom-shape")
        if not is_linear_type(c.type):
            fail("axiom-not-linear")
        if quantitative:
            if decl.multi[0] != c.multitype or not is_multitype(c.multitype):
                fail("multitype-mismatch")
            if c.index != 0:
                fail("index-mismatch", f"axiom index {c.index}")

    elif d.rule == EXCHANGE:
        (p,) = premises
        _same_subject(p, c, fail)
        same_mt_index(p)
        pe, ce = p.env.decls, c.env.decls
        swaps = [i for i in range(len(pe) - 1)
                 if len(pe) == len(ce) and ce == pe[:i] + (pe[i + 1], pe[i]) + pe[i + 2:]]
        if not swaps:
            fail("exchange-shape")

    elif d.rule == CONTRACTION:
        (p,) = premises
        if p.type != c.type:
            fail("type-mismatch")
        same_mt_index(p)
        pe, ce = p.env.decls, c.env.decls
        if len(pe) != len(ce) + 1:
            fail("contraction-shape")
        i = next((k for k in range(len(ce)) if ce[k] != pe[k]), len(ce) - 1)
        if i < 0:
            fail("contraction-shape")
        first, second, merged = pe[i], pe[i + 1], ce[i]
        if ce[:i] != pe[:i] or ce[i + 1:] != pe[i + 2:]:
            fail("contraction-shape")
        if merged.types != first.types + second.types:
            fail("contraction-shape", "sequences not concatenated")
        if quantitative and merged.multi != first.multi + second.multi:
            fail("contraction-shape", "multi-sequences not concatenated")
        expected = subst_many(p.term, [(Var(merged.var), first.var), (Var(merged.var), second.var)])
        if not alpha_eq(expected, c.term):
            fail("subject-mismatch")

    elif d.rule in (LOLLI_INTRO, ARROW_INTRO, LOLLI_INTRO_T, ARROW_INTRO_T):
        (p,) = premises
        if not p.env.decls:
            fail("intro-shape", "empty premise environment")
        last = p.env.decls[-1]
        if p.env.decls[:-1] != c.env.decls:
            fail("intro-shape", "conclusion environment must drop the last declaration")
        if not isinstance(c.term, Abs) or not alpha_eq(c.term, Abs(last.var, p.term)):
            fail("subject-mismatch")
        lolli = d.rule in (LOLLI_INTRO, LOLLI_INTRO_T)
        if lolli and len(last.types) != 1:
            fail("lolli-needs-one", f"{last.var} has {len(last.types)} types")
        if not lolli and len(last.types) < 2:
            fail("n>=2", f"{last.var} has {len(last.types)} type")
        expected = Lolli(last.types[0], p.type) if lolli else Arrow(last.types, p.type)
        if c.type != expected:
            fail("type-mismatch")
        if quantitative:
            if d.rule in (LOLLI_INTRO, ARROW_INTRO):
                mt = Lolli(last.multi[0], p.multitype) if lolli else Arrow(last.multi, p.multitype)
                if c.multitype != mt:
                    fail("multitype-mismatch")
                if c.index != p.index + 1:
                    fail("index-mismatch", f"{c.index} != {p.index} + 1")
            else:
                if not _tight(last.multi) or not _tight(p.multitype):
                    fail("not-tight")
                if c.multitype != ABS:
                    fail("multitype-mismatch", "tight introduction concludes Abs")
                if c.index != p.index:
                    fail("index-mismatch", f"{c.index} != {p.index}")

    elif d.rule in (LOLLI_ELIM, LOLLI_ELIM_T):
        head, arg = premises
        if not isinstance(head.type, Lolli) or not is_linear_type(head.type.left):
            fail("type-mismatch", "head must have a -o type")
        if arg.type != head.type.left or c.type != head.type.right:
            fail("type-mismatch")
        if not alpha_eq(c.term, App(head.term, arg.term)):
            fail("subject-mismatch")
        _check_env(c.env, lambda: env_append(head.env, arg.env), fail)
        if quantitative:
            _check_elim_multitypes(d.rule == LOLLI_ELIM_T, head.multitype, [arg.multitype], c, fail, lolli=True)
            if c.index != head.index + arg.index:
                fail("index-mismatch", f"{c.index} != {head.index} + {arg.index}")

    elif d.rule in (ARROW_ELIM, ARROW_ELIM_T):
        if len(premises) < 3:
            fail("n>=2", f"{len(premises) - 1} argument premises")
        head, args = premises[0], premises[1:]
        if not isinstance(head.type, Arrow) or len(head.type.left) != len(args):
            fail("type-mismatch", "head must have an intersection of as many types as argument premises")
        for expected, a in zip(head.type.left, args):
            if a.type != expected:
                fail("type-mismatch", f"argument typed {show_type(a.type)}, expected {show_type(expected)}")
            if not alpha_eq(a.term, args[0].term):
                fail("subject-mismatch", "argument premises type different terms")
        if c.type != head.type.right:
            fail("type-mismatch")
        if not alpha_eq(c.term, App(head.term, args[0].term)):
            fail("subject-mismatch")

        def expected_env() -> Env:
            total = args[0].env
            for a in args[1:]:
                total = env_sum(total, a.env)
            return env_append(head.env, total)

        _check_env(c.env, expected_env, fail)
        if quantitative:
            _check_elim_multitypes(d.rule == ARROW_ELIM_T, head.multitype, [a.multitype for a in args], c, fail,
                                   lolli=False)
            total = head.index + sum(a.index for a in args)
            if c.index != total:
                fail("index-mismatch", f"{c.index} != {total}")
    return c


def _same_subject(p: Judgment, c: Judgment, fail) -> None:
    if not alpha_eq(p.term, c.term):
        fail("subject-mismatch")
    if p.type != c.type:
        fail("type-mismatch")


def _check_env(actual: Env, expected, fail) -> None:
    try:
        want = expected()
    except ValueError as err:
        fail("inconsistent-environment", str(err))
    if actual != want:
        fail("environment-mismatch")


def _check_elim_multitypes(tight_rule: bool, head_mt: Type, arg_mts: list, c: Judgment, fail, lolli: bool) -> None:
    if tight_rule:
        if head_mt != NEUTRAL:
            fail("head-not-neutral", f"head multi-type is {head_mt}")
        if not all(_tight(m) for m in arg_mts):
            fail("not-tight", "argument multi-types must be tight")
        if c.multitype != NEUTRAL:
            fail("multitype-mismatch", "tight elimination concludes Neutral")
        return
    if lolli:
        if not isinstance(head_mt, Lolli) or head_mt.left != arg_mts[0]:
            fail("multitype-mismatch")
    else:
        if not isinstance(head_mt, Arrow) or tuple(arg_mts) != head_mt.left:
            fail("multitype-mismatch")
    if c.multitype != head_mt.right:
        fail("multitype-mismatch")


def _check_judgment_shape(c: Judgment, quantitative: bool, fail) -> None:
    if not is_rank2(c.type):
        fail("ill-formed-type", show_type(c.type))
    for decl in c.env:
        if not all(is_linear_type(t) for t in decl.types):
            fail("ill-formed-type", f"{decl.var}: {show_seq(decl.types)}")
    if quantitative:
        if c.multitype is None or c.index is None or c.index < 0:
            fail("missing-quantities")
        if not is_mrank2(c.multitype):
            fail("ill-formed-multitype", show_type(c.multitype))
        for decl in c.env:
            if decl.multi is None or not all(is_multitype(t) for t in decl.multi):
                fail("ill-formed-multitype", decl.var)
    elif c.multitype is not None or c.index is not None or any(decl.multi is not None for decl in c.env):
        fail("quantitative-judgment", "plain check given multi-types or an index")


# ---------------------------------------------------------------------------
# derivation transformations

def subst_derivation(d: Derivation, s: Mapping[str, Type]) -> Derivation:
    """Apply a type substitution to every judgment (types only, multi-types untouched)."""
    if not s:
        return d
    c = d.conclusion
    conclusion = replace(c, env=apply_subst(s, c.env), type=apply_subst(s, c.type))
    return Derivation(d.rule, conclusion, tuple(subst_derivation(p, s) for p in d.premises))


def rename_free(d: Derivation, mapping: Mapping[str, str]) -> Derivation:
    """Rename free term variables of the root consistently through the whole tree.

    New names must not occur anywhere in the derivation.
    """
    c = d.conclusion
    mapping = {k: v for k, v in mapping.items() if k in c.env}
    if not mapping:
        return d
    env = Env(Decl(mapping.get(x.var, x.var), x.types, x.multi) for x in c.env)
    term = subst_many(c.term, [(Var(v), k) for k, v in mapping.items()])
    contracted = None
    if d.rule == CONTRACTION:
        p = d.premises[0].conclusion
        contracted = next(x.var for x, y in zip(c.env.decls, p.env.decls + (None,)) if x != y)
    premises = []
    for p in d.premises:
        pm = {k: v for k, v in mapping.items() if k in p.conclusion.env and k != contracted}
        premises.append(rename_free(p, pm))
    return Derivation(d.rule, replace(c, env=env, term=term), tuple(premises))


def exchange(d: Derivation, i: int) -> Derivation:
    """Swap declarations i and i+1 of the root environment."""
    c = d.conclusion
    decls = c.env.decls
    env = Env(decls[:i] + (decls[i + 1], decls[i]) + decls[i + 2:])
    return Derivation(EXCHANGE, replace(c, env=env), (d,))


def contract(d: Derivation, i: int, name: str) -> Derivation:
    """Merge declarations i and i+1 of the root environment into ``name``."""
    c = d.conclusion
    decls = c.env.decls
    first, second = decls[i], decls[i + 1]
    multi = None if first.multi is None else first.multi + second.multi
    merged = Decl(name, first.types + second.types, multi)
    env = Env(decls[:i] + (merged,) + decls[i + 2:])
    term = subst_many(c.term, [(Var(name), first.var), (Var(name), second.var)])
    return Derivation(CONTRACTION, replace(c, env=env, term=term), (d,))


def _move_to_end(d: Derivation, var: str) -> Derivation:
    i = d.conclusion.env.index(var)
    while i < len(d.conclusion.env) - 1:
        d = exchange(d, i)
        i += 1
    return d


def _intro(d: Derivation, var: str) -> Derivation:
    d = _move_to_end(d, var)
    c = d.conclusion
    last = c.env.decls[-1]
    if len(last.types) == 1:
        rule, t = LOLLI_INTRO, Lolli(last.types[0], c.type)
    else:
        rule, t = ARROW_INTRO, Arrow(last.types, c.type)
    return Derivation(rule, Judgment(Env(c.env.decls[:-1]), Abs(var, c.term), t), (d,))


def _eliminate(head: Derivation, args: list[Derivation]) -> Derivation:
    """Apply (-o Elim) or (-> Elim), then contract variables shared by head and argument(s).

    The result environment is ``head.env + sum(arg envs)`` with that exact ordering.
    """
    h = head.conclusion
    arg_env = args[0].conclusion.env
    for a in args[1:]:
        arg_env = env_sum(arg_env, a.conclusion.env)
    shared = [x for x in h.env.dom() if x in arg_env]
    avoid = set().union(*(syntax.all_names(dd.conclusion.term) for dd in [head] + args), arg_env.dom(), h.env.dom())
    renaming = {}
    for x in shared:
        renaming[x] = syntax.fresh_name(x, avoid)
        avoid.add(renaming[x])
    head = rename_free(head, renaming)
    h = head.conclusion
    term = App(h.term, args[0].conclusion.term)
    env = env_append(h.env, arg_env)
    if isinstance(h.type, Lolli):
        d = Derivation(LOLLI_ELIM, Judgment(env, term, h.type.right), (head, args[0]))
    else:
        d = Derivation(ARROW_ELIM, Judgment(env, term, h.type.right), (head, *args))
    for x in shared:
        p = d.conclusion.env.index(renaming[x])
        q = d.conclusion.env.index(x)
        while q > p + 1:
            d = exchange(d, q - 1)
            q -= 1
        d = contract(d, p, x)
    return d


# ---------------------------------------------------------------------------
# soundness by construction

def build_from_inference(term: Term) -> Derivation:
    """A plain derivation of the judgment computed by inference.

    Raises :class:`lrank2.infer.InferenceError` when inference fails.
    """
    return _build(infer_trace(term))


def _build(node: Node) -> Derivation:
    if node.rule == "var":
        return Derivation(AXIOM, Judgment(node.env, node.term, node.type))
    if node.rule in ("lolli-intro", "arrow-intro"):
        return _intro(_build(node.children[0]), node.term.var)
    parts = [subst_derivation(_build(child), node.subst) for child in node.children]
    d = _eliminate(parts[0], parts[1:])
    c = d.conclusion
    assert c.env == node.env and c.type == node.type, (str(c), node.env, node.type)
    return d


# ---------------------------------------------------------------------------
# bounded enumeration

def linear_types(max_depth: int, names: Iterable[str] = ("a", "b")) -> list[Type]:
    """All linear types over ``names`` with depth at most ``max_depth``."""
    level = [TVar(n) for n in names]
    found = list(level)
    for _ in range(max_depth):
        found = [TVar(n) for n in names] + [Lolli(l, r) for l in found for r in found]
    return sorted(set(found), key=lambda t: (depth(t), show_type(t)))


@functools.lru_cache(maxsize=None)
def _type_key(t: Type) -> str:
    return show_type(t)


def _env_key(env: dict) -> tuple:
    # environment types are linear, so sorting each sequence is the AC normal form
    return tuple(sorted((x, tuple(sorted(seq, key=_type_key))) for x, seq in env.items()))


def _key_sum(*keys: tuple) -> dict:
    total: dict = {}
    for key in keys:
        for x, seq in key:
            total[x] = total.get(x, ()) + seq
    return total


class JudgmentEnumerator:
    """Bottom-up search for derivable judgments, memoized per subterm.

    One instance may serve many terms; ``free_names`` must cover the free
    variables of every term it is asked about.
    """

    def __init__(self, type_depth: int, max_seq: int = 3, names: tuple[str, ...] = ("a", "b"),
                 free_names: Iterable[str] = ()):
        self.type_depth = type_depth
        self.max_seq = max_seq
        self.free = set(free_names)
        self.linear = linear_types(type_depth, names)
        # a bound variable's types end up directly under the binder's type,
        # so they are one level shallower than the bound
        self.linear_bound = [t for t in self.linear if depth(t) < type_depth]
        self.cache: dict = {}

    def classes(self, term: Term) -> list[tuple[Env, Type]]:
        """One (env, type) per derivable judgment class of ``term``."""
        return [(Env(Decl(x, seq) for x, seq in env), t) for _, (env, t) in self._canonical_keys(term)]

    def derivations(self, term: Term, count_bound: int) -> list[Derivation]:
        return [self.witness(term, key) for _, key in self._canonical_keys(term)[:count_bound]]

    def _canonical_keys(self, term: Term) -> list:
        missing = set(syntax.fv(term)) - self.free
        if missing:
            raise ValueError(f"free variables {sorted(missing)} not declared to the enumerator")
        seen: dict = {}
        for key in self.judgments(term):
            env, t = key
            mapping = canonical_renaming(Env(Decl(x, seq) for x, seq in env), t, prefix="_")
            cenv = tuple((x, ac_sorted(rename_vars(seq, mapping))) for x, seq in env)
            ct = ac_normal(rename_vars(t, mapping))
            seen.setdefault((cenv, ct), key)
        return sorted(seen.items(), key=lambda kv: str(kv[0]))

    def judgments(self, term: Term) -> dict:
        """Map (env_key, type) -> how it was obtained, for every judgment within bounds."""
        if term in self.cache:
            return self.cache[term]
        out: dict = {}
        if isinstance(term, Var):
            for t in self.linear if term.name in self.free else self.linear_bound:
                out[(((term.name, (t,)),), t)] = ("axiom",)
        elif isinstance(term, Abs):
            for key in self.judgments(term.body):
                env, t = key
                seq = dict(env).get(term.var)
                if seq is None:
                    continue
                rest = tuple(e for e in env if e[0] != term.var)
                new = Lolli(seq[0], t) if len(seq) == 1 else ac_normal(Arrow(seq, t))
                if depth(new) <= self.type_depth:
                    out.setdefault((rest, new), ("intro", key))
        else:
            by_type: dict = {}
            for key in self.judgments(term.arg):
                by_type.setdefault(key[1], []).append(key)
            for hkey in self.judgments(term.fun):
                henv, ht = hkey
                if isinstance(ht, Lolli):
                    choices = [by_type.get(ht.left, [])]
                elif isinstance(ht, Arrow):
                    choices = [by_type.get(t, []) for t in ht.left]
                else:
                    continue
                for picks in itertools.product(*choices):
                    total = _key_sum(henv, *(p[0] for p in picks))
                    if any(len(seq) > self.max_seq for seq in total.values()):
                        continue
                    out.setdefault((_env_key(total), ht.right), ("elim", hkey, picks))
        self.cache[term] = out
        return out

    def witness(self, term: Term, key) -> Derivation:
        how = self.judgments(term)[key]
        env, t = key
        if how[0] == "axiom":
            return Derivation(AXIOM, Judgment(Env([Decl(term.name, (t,))]), term, t))
        if how[0] == "intro":
            return _intro(self.witness(term.body, how[1]), term.var)
        _, hkey, picks = how
        head = self.witness(term.fun, hkey)
        ht = head.conclusion.type
        if isinstance(ht, Lolli):
            args = [self.witness(term.arg, picks[0])]
        else:
            pending = list(picks)
            ordered = []
            for want in ht.left:
                k = next(i for i, p in enumerate(pending) if p[1] == want)
                ordered.append(pending.pop(k))
            args = [self.witness(term.arg, p) for p in ordered]
        return _eliminate(head, args)


def enumerate_judgments(term: Term, type_depth_bound: int, seq_bound: int = 3,
                        names: tuple[str, ...] = ("a", "b")) -> list[tuple[Env, Type]]:
    """Every derivable (env, type) for ``term`` within the bounds, modulo AC and type-variable renaming."""
    return JudgmentEnumerator(type_depth_bound, seq_bound, names, syntax.fv(term)).classes(term)


def enumerate_derivations(term: Term, type_depth_bound: int, count_bound: int, seq_bound: int = 3,
                          names: tuple[str, ...] = ("a", "b")) -> list[Derivation]:
    """Witness derivations, one per derivable judgment class, at most ``count_bound`` of them."""
    return JudgmentEnumerator(type_depth_bound, seq_bound, names, syntax.fv(term)).derivations(term, count_bound)


# ---------------------------------------------------------------------------
# JSON

def judgment_to_json(j: Judgment) -> dict:
    env = []
    for d in j.env:
        item = {"var": d.var, "types": show_seq(d.types)}
        if d.multi is not None:
            item["multitypes"] = show_seq(d.multi)
        env.append(item)
    out = {"env": env, "term": syntax.show(j.term), "type": show_type(j.type)}
    if j.multitype is not None:
        out["multitype"] = show_type(j.multitype)
    if j.index is not None:
        out["index"] = j.index
    return out


def judgment_from_json(data: dict) -> Judgment:
    env = Env(
        Decl(item["var"], parse_seq(item["types"]),
             parse_seq(item["multitypes"]) if "multitypes" in item else None)
        for item in data["env"]
    )
    multitype = parse_type(data["multitype"]) if "multitype" in data else None
    return Judgment(env, syntax.parse(data["term"]), parse_type(data["type"]), multitype, data.get("index"))


def to_json(d: Derivation) -> dict:
    return {
        "rule": d.rule,
        "conclusion": judgment_to_json(d.conclusion),
        "premises": [to_json(p) for p in d.premises],
    }


def from_json(data: dict) -> Derivation:
    return Derivation(
        data["rule"],
        judgment_from_json(data["conclusion"]),
        tuple(from_json(p) for p in data.get("premises", [])),
    )
