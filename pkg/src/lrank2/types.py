"""Intersection types, tight multi-types, type substitutions and environments.

One AST serves every grammar in the package:

* linear types: ``TVar`` and ``Lolli`` over linear types;
* linear rank 2 types: linear types, ``Lolli(linear, rank2)`` and
  ``Arrow(seq, rank2)`` with a sequence of at least two linear types;
* multi-types: the same shapes plus the ``Tight`` constants;
* general intersection types (only fed to the rank classifiers), where
  ``Arrow`` may have a single-element left side.

Sequences are plain tuples. Structural equality on them is positional;
:func:`seq_equiv` compares them as multisets.

Concrete syntax: ``-o`` linear arrow, ``&`` intersection, ``->`` arrow with an
intersection on the left, ``Neutral``/``Abs`` tight constants. ``&`` binds
tighter than both arrows and both arrows associate to the right.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Union


@dataclass(frozen=True)
class TVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Tight:
    name: str  # "Neutral" or "Abs"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Lolli:
    left: Type
    right: Type

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Arrow:
    left: tuple  # tuple[Type, ...]
    right: Type

    def __str__(self) -> str:
        return show_type(self)


Type = Union[TVar, Tight, Lolli, Arrow]
Seq = tuple  # non-empty tuple[Type, ...]

NEUTRAL = Tight("Neutral")
ABS = Tight("Abs")


class IllFormed(ValueError):
    pass


# ---------------------------------------------------------------------------
# grammar predicates

def is_linear_type(t: Type) -> bool:
    if isinstance(t, TVar):
        return True
    if isinstance(t, Lolli):
        return is_linear_type(t.left) and is_linear_type(t.right)
    return False


def is_seq(seq: Seq) -> bool:
    return isinstance(seq, tuple) and len(seq) >= 1 and all(is_linear_type(t) for t in seq)


def is_rank2(t: Type) -> bool:
    if is_linear_type(t):
        return True
    if isinstance(t, Lolli):
        return is_linear_type(t.left) and is_rank2(t.right)
    if isinstance(t, Arrow):
        return len(t.left) >= 2 and all(is_linear_type(x) for x in t.left) and is_rank2(t.right)
    return False


def is_multitype(t: Type) -> bool:
    """Rank 0 multi-type: tight constant, variable, or ``t -o t``."""
    if isinstance(t, (Tight, TVar)):
        return True
    if isinstance(t, Lolli):
        return is_multitype(t.left) and is_multitype(t.right)
    return False


def is_mrank2(t: Type) -> bool:
    if is_multitype(t):
        return True
    if isinstance(t, Lolli):
        return is_multitype(t.left) and is_mrank2(t.right)
    if isinstance(t, Arrow):
        return len(t.left) >= 2 and all(is_multitype(x) for x in t.left) and is_mrank2(t.right)
    return False


def is_tight(t: Union[Type, Seq]) -> bool:
    if isinstance(t, tuple):
        return all(isinstance(x, Tight) for x in t)
    return isinstance(t, Tight)


def type_vars(t: Union[Type, Seq]) -> tuple[str, ...]:
    """Type variables in order of first occurrence."""
    seen: dict[str, None] = {}

    def go(x):
        if isinstance(x, TVar):
            seen.setdefault(x.name)
        elif isinstance(x, Lolli):
            go(x.left)
            go(x.right)
        elif isinstance(x, Arrow):
            for item in x.left:
                go(item)
            go(x.right)
        elif isinstance(x, tuple):
            for item in x:
                go(item)

    go(t)
    return tuple(seen)


def depth(t: Type) -> int:
    if isinstance(t, (TVar, Tight)):
        return 0
    if isinstance(t, Lolli):
        return 1 + max(depth(t.left), depth(t.right))
    return 1 + max(max(depth(x) for x in t.left), depth(t.right))


# ---------------------------------------------------------------------------
# rank classifiers

def _is_simple(t: Type) -> bool:
    if isinstance(t, TVar):
        return True
    return isinstance(t, Arrow) and len(t.left) == 1 and _is_simple(t.left[0]) and _is_simple(t.right)


def classical_rank(t: Type) -> int:
    """Least k with the type in the classical rank k set (simple types are rank 0)."""
    if isinstance(t, (Lolli, Tight)):
        raise IllFormed(f"{t} is outside the classical intersection-type grammar")
    if _is_simple(t):
        return 0
    return max(2, classical_rank(t.right), *(classical_rank(x) + 1 for x in t.left))


def linear_rank(t: Type) -> int:
    """Least k with the type in the linear rank k set (linear types are rank 0)."""
    if isinstance(t, Tight):
        raise IllFormed(f"tight constant {t} has no linear rank")
    if isinstance(t, Arrow) and len(t.left) < 2:
        raise IllFormed(f"single-element intersection in {t}; write it with -o")
    if is_linear_type(t):
        return 0
    if isinstance(t, Lolli):
        return max(2, linear_rank(t.right), linear_rank(t.left) + 1)
    return max(2, linear_rank(t.right), *(linear_rank(x) + 1 for x in t.left))


# ---------------------------------------------------------------------------
# printing and parsing

def _atomic(t: Type) -> str:
    s = show_type(t)
    return f"({s})" if isinstance(t, (Lolli, Arrow)) else s


def show_seq(seq: Seq) -> str:
    return " & ".join(_atomic(t) for t in seq)


def show_type(t: Type) -> str:
    if isinstance(t, (TVar, Tight)):
        return t.name
    if isinstance(t, Lolli):
        return f"{_atomic(t.left)} -o {show_type(t.right)}"
    return f"{show_seq(t.left)} -> {show_type(t.right)}"


class TypeSyntaxError(ValueError):
    pass


_TYPE_TOKEN = re.compile(r"\s*(?:(-o|⊸)|(->|→)|(&|∩)|(\()|(\))|([^\W\d_][\w']*(?:#[0-9]+)?))")


def _type_tokens(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if m is None:
            raise TypeSyntaxError(f"unexpected {text[pos:pos + 10]!r} in type {text!r}")
        kinds = ("-o", "->", "&", "(", ")")
        for i, kind in enumerate(kinds, start=1):
            if m.group(i):
                tokens.append(kind)
                break
        else:
            tokens.append(m.group(6))
        pos = m.end()
    return tokens


class _TypeParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _type_tokens(text)
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise TypeSyntaxError(f"unexpected end of type {self.text!r}")
        self.i += 1
        return tok

    def inter(self) -> Seq:
        items = [self.atom()]
        while self.peek() == "&":
            self.i += 1
            items.append(self.atom())
        return tuple(items)

    def type_or_seq(self) -> Union[Type, Seq]:
        items = self.inter()
        tok = self.peek()
        if tok == "-o":
            self.i += 1
            if len(items) != 1:
                raise TypeSyntaxError(f"left of -o must be a single type in {self.text!r}")
            return Lolli(items[0], self.type())
        if tok == "->":
            self.i += 1
            return Arrow(items, self.type())
        return items[0] if len(items) == 1 else items

    def type(self) -> Type:
        result = self.type_or_seq()
        if isinstance(result, tuple):
            raise TypeSyntaxError(f"bare intersection where a type was expected in {self.text!r}")
        return result

    def atom(self) -> Type:
        tok = self.next()
        if tok == "(":
            inner = self.type()
            if self.next() != ")":
                raise TypeSyntaxError(f"expected ')' in {self.text!r}")
            return inner
        if tok in ("-o", "->", "&", ")"):
            raise TypeSyntaxError(f"unexpected {tok!r} in {self.text!r}")
        if tok in ("Neutral", "Abs"):
            return Tight(tok)
        return TVar(tok)

    def done(self) -> None:
        if self.peek() is not None:
            raise TypeSyntaxError(f"trailing {self.peek()!r} in {self.text!r}")


def parse_type(text: str) -> Type:
    p = _TypeParser(text)
    result = p.type()
    p.done()
    return result


def parse_seq(text: str) -> Seq:
    p = _TypeParser(text)
    result = p.type_or_seq()
    p.done()
    return result if isinstance(result, tuple) else (result,)


# ---------------------------------------------------------------------------
# substitutions

TypeSubst = dict  # dict[str, Type]


def apply_subst(subst: Mapping[str, Type], x):
    """Apply a type substitution to a type, a sequence, or an environment."""
    if not subst:
        return x
    if isinstance(x, TVar):
        return subst.get(x.name, x)
    if isinstance(x, Tight):
        return x
    if isinstance(x, Lolli):
        return Lolli(apply_subst(subst, x.left), apply_subst(subst, x.right))
    if isinstance(x, Arrow):
        return Arrow(tuple(apply_subst(subst, t) for t in x.left), apply_subst(subst, x.right))
    if isinstance(x, tuple):
        return tuple(apply_subst(subst, t) for t in x)
    if isinstance(x, Env):
        return Env(Decl(d.var, apply_subst(subst, d.types), d.multi) for d in x)
    raise TypeError(f"cannot substitute into {type(x).__name__}")


def compose_subst(second: Mapping[str, Type], first: Mapping[str, Type]) -> TypeSubst:
    """``second . first``: bindings of ``second`` outside dom(first), then ``second`` applied to ``first``."""
    result = {a: t for a, t in second.items() if a not in first}
    for a, t in first.items():
        result[a] = apply_subst(second, t)
    return {a: t for a, t in result.items() if t != TVar(a)}


def rename_vars(x, mapping: Mapping[str, str]):
    return apply_subst({a: TVar(b) for a, b in mapping.items()}, x)


# ---------------------------------------------------------------------------
# environments

class Decl(NamedTuple):
    var: str
    types: Seq
    multi: Optional[Seq] = None


class Env:
    """Ordered, consistent list of declarations ``x : types`` (optionally paired with multi-types)."""

    __slots__ = ("decls",)

    def __init__(self, decls: Iterable = ()):
        decls = tuple(Decl(*d) for d in decls)
        names = [d.var for d in decls]
        if len(set(names)) != len(names):
            raise ValueError(f"inconsistent environment: repeated variable in {names}")
        for d in decls:
            if not d.types:
                raise ValueError(f"empty sequence for {d.var}")
            if d.multi is not None and len(d.multi) != len(d.types):
                raise ValueError(f"types and multi-types of {d.var} differ in length")
        self.decls = decls

    def __iter__(self) -> Iterator[Decl]:
        return iter(self.decls)

    def __len__(self) -> int:
        return len(self.decls)

    def __eq__(self, other) -> bool:
        return isinstance(other, Env) and self.decls == other.decls

    def __hash__(self) -> int:
        return hash(self.decls)

    def __repr__(self) -> str:
        return f"Env({list(self.decls)!r})"

    def __str__(self) -> str:
        return show_env(self)

    def dom(self) -> tuple[str, ...]:
        return tuple(d.var for d in self.decls)

    def __contains__(self, var: str) -> bool:
        return any(d.var == var for d in self.decls)

    def decl(self, var: str) -> Optional[Decl]:
        for d in self.decls:
            if d.var == var:
                return d
        return None

    def index(self, var: str) -> int:
        return self.dom().index(var)


def env_lookup(env: Env, var: str) -> Optional[Seq]:
    d = env.decl(var)
    return None if d is None else d.types


def env_remove(env: Env, var: str) -> Env:
    return Env(d for d in env if d.var != var)


def env_sum(left: Env, right: Env) -> Env:
    """Left's declarations in order (shared ones concatenated), then right's new ones."""
    decls = []
    for d in left:
        other = right.decl(d.var)
        if other is None:
            decls.append(d)
        else:
            multi = None
            if d.multi is not None or other.multi is not None:
                multi = (d.multi or ()) + (other.multi or ())
            decls.append(Decl(d.var, d.types + other.types, multi))
    decls.extend(d for d in right if d.var not in left)
    return Env(decls)


def env_append(left: Env, right: Env) -> Env:
    """List concatenation ``(left, right)``; raises if the result is inconsistent."""
    return Env(left.decls + right.decls)


def seq_equiv(a: Seq, b: Seq) -> bool:
    return Counter(a) == Counter(b)


def env_equiv(a: Env, b: Env) -> bool:
    """Same declarations up to their order (and the order inside each sequence)."""
    if sorted(a.dom()) != sorted(b.dom()):
        return False
    for d in a:
        e = b.decl(d.var)
        if not seq_equiv(d.types, e.types):
            return False
        if (d.multi is None) != (e.multi is None):
            return False
        if d.multi is not None and Counter(zip(d.types, d.multi)) != Counter(zip(e.types, e.multi)):
            return False
    return True


def env_vars(env: Env) -> tuple[str, ...]:
    return type_vars(tuple(t for d in env for t in d.types))


def show_env(env: Env) -> str:
    parts = []
    for d in env:
        if d.multi is None:
            parts.append(f"{d.var}: {show_seq(d.types)}")
        else:
            parts.append(f"{d.var}: {show_seq(d.types)} | {show_seq(d.multi)}")
    return "[" + ", ".join(parts) + "]"


# ---------------------------------------------------------------------------
# canonical naming and AC normal forms

def canonical_renaming(env: Env, t: Optional[Type] = None, prefix: str = "a") -> dict[str, str]:
    names = env_vars(env) + (type_vars(t) if t is not None else ())
    order = tuple(dict.fromkeys(names))
    return {a: f"{prefix}{i}" for i, a in enumerate(order)}


def canonicalize(env: Env, t: Type) -> tuple[Env, Type]:
    """Rename type variables to a0, a1, ... in order of first occurrence (env first, then type)."""
    mapping = canonical_renaming(env, t)
    return rename_vars(env, mapping), rename_vars(t, mapping)


def _sort_key(t: Type) -> str:
    return show_type(t)


def ac_normal(t: Type) -> Type:
    """Sort every intersection, so types equal modulo AC become identical."""
    if isinstance(t, Lolli):
        return Lolli(ac_normal(t.left), ac_normal(t.right))
    if isinstance(t, Arrow):
        return Arrow(tuple(sorted((ac_normal(x) for x in t.left), key=_sort_key)), ac_normal(t.right))
    return t


def ac_sorted(seq: Seq) -> Seq:
    return tuple(sorted((ac_normal(t) for t in seq), key=_sort_key))
