"""Lambda terms: parsing, printing, free variables, substitution, alpha-equivalence.

Terms use named binders. Fresh names are built by appending ``#k`` to a base
name; ``#`` never appears in identifiers written by users, so a generated
name can only clash with another generated one, which :func:`fresh_name`
rules out by checking an explicit avoid set.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Abs:
    var: str
    body: Term

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class App:
    fun: Term
    arg: Term

    def __str__(self) -> str:
        return show(self)


Term = Union[Var, Abs, App]


class ParseError(ValueError):
    """Malformed term text. ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<lam>\\|λ)
  | (?P<dot>\.)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*(?:\#[0-9]+)?)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), _byte_offset(text, pos)))
        pos = m.end()
    tokens.append(("eof", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> str:
        k, value, offset = self.peek()
        if k != kind:
            what = repr(value) if value else "end of input"
            raise ParseError(f"expected {kind}, found {what}", offset)
        self.i += 1
        return value

    def term(self) -> Term:
        head = self.atom()
        while self.peek()[0] in ("ident", "lpar", "lam"):
            head = App(head, self.atom())
        return head

    def atom(self) -> Term:
        kind, value, offset = self.peek()
        if kind == "ident":
            self.i += 1
            return Var(value)
        if kind == "lpar":
            self.i += 1
            inner = self.term()
            self.take("rpar")
            return inner
        if kind == "lam":
            self.i += 1
            binders = [self.take("ident")]
            while self.peek()[0] == "ident":
                binders.append(self.take("ident"))
            self.take("dot")
            if self.peek()[0] in ("eof", "rpar"):
                raise ParseError("abstraction without a body", self.peek()[2])
            body = self.term()
            for name in reversed(binders):
                body = Abs(name, body)
            return body
        what = repr(value) if value else "end of input"
        raise ParseError(f"expected a term, found {what}", offset)


def parse(text: str) -> Term:
    """Parse a term. ``\\x y. M`` is sugar for ``\\x. \\y. M``."""
    p = _Parser(text)
    result = p.term()
    kind, value, offset = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {value!r}", offset)
    return result


# ---------------------------------------------------------------------------
# printing

def show(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Abs):
        return f"\\{term.var}. {show(term.body)}"
    fun = show(term.fun)
    if isinstance(term.fun, Abs):
        fun = f"({fun})"
    arg = show(term.arg)
    if not isinstance(term.arg, Var):
        arg = f"({arg})"
    return f"{fun} {arg}"


# ---------------------------------------------------------------------------
# structural queries

def size(term: Term) -> int:
    """Number of AST nodes."""
    if isinstance(term, Var):
        return 1
    if isinstance(term, Abs):
        return 1 + size(term.body)
    return 1 + size(term.fun) + size(term.arg)


def fv(term: Term) -> tuple[str, ...]:
    """Free variables in order of first free occurrence."""
    seen: dict[str, None] = {}

    def go(t: Term, bound: frozenset[str]) -> None:
        if isinstance(t, Var):
            if t.name not in bound:
                seen.setdefault(t.name)
        elif isinstance(t, Abs):
            go(t.body, bound | {t.var})
        else:
            go(t.fun, bound)
            go(t.arg, bound)

    go(term, frozenset())
    return tuple(seen)


def free_occurrences(term: Term) -> Counter[str]:
    """How many times each free variable occurs."""
    if isinstance(term, Var):
        return Counter({term.name: 1})
    if isinstance(term, Abs):
        inner = free_occurrences(term.body)
        inner.pop(term.var, None)
        return inner
    return free_occurrences(term.fun) + free_occurrences(term.arg)


def all_names(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Abs):
        return {term.var} | all_names(term.body)
    return all_names(term.fun) | all_names(term.arg)


def is_lambda_I(term: Term) -> bool:
    """Every binder occurs free in its body at least once."""
    if isinstance(term, Var):
        return True
    if isinstance(term, Abs):
        return term.var in fv(term.body) and is_lambda_I(term.body)
    return is_lambda_I(term.fun) and is_lambda_I(term.arg)


def is_linear(term: Term) -> bool:
    """Every binder is used exactly once and every free variable occurs once."""
    if any(n != 1 for n in free_occurrences(term).values()):
        return False

    def binders_ok(t: Term) -> bool:
        if isinstance(t, Var):
            return True
        if isinstance(t, Abs):
            return free_occurrences(t.body)[t.var] == 1 and binders_ok(t.body)
        return binders_ok(t.fun) and binders_ok(t.arg)

    return binders_ok(term)


# ---------------------------------------------------------------------------
# substitution and alpha-equivalence

def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Smallest ``base#k`` (k >= 1) not in ``avoid``."""
    avoid = set(avoid)
    stem = base.split("#", 1)[0]
    k = 1
    while f"{stem}#{k}" in avoid:
        k += 1
    return f"{stem}#{k}"


def subst(term: Term, replacement: Term, name: str) -> Term:
    """``term[replacement/name]``, renaming binders that would capture."""
    fv_rep = set(fv(replacement))

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return replacement if t.name == name else t
        if isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        if t.var == name:
            return t
        body_fv = fv(t.body)
        if name not in body_fv:
            return t
        if t.var in fv_rep:
            new = fresh_name(t.var, fv_rep | set(body_fv) | {name})
            return Abs(new, go(subst(t.body, Var(new), t.var)))
        return Abs(t.var, go(t.body))

    return go(term)


def subst_many(term: Term, pairs: Iterable[tuple[Term, str]]) -> Term:
    """Apply ``M[N1/x1, ..., Nk/xk]`` one pair at a time, left to right."""
    for replacement, name in pairs:
        term = subst(term, replacement, name)
    return term


def alpha_eq(left: Term, right: Term) -> bool:
    def go(a: Term, b: Term, env_a: dict[str, int], env_b: dict[str, int], depth: int) -> bool:
        if isinstance(a, Var) and isinstance(b, Var):
            ia, ib = env_a.get(a.name), env_b.get(b.name)
            if ia is None and ib is None:
                return a.name == b.name
            return ia == ib
        if isinstance(a, Abs) and isinstance(b, Abs):
            return go(a.body, b.body, {**env_a, a.var: depth}, {**env_b, b.var: depth}, depth + 1)
        if isinstance(a, App) and isinstance(b, App):
            return go(a.fun, b.fun, env_a, env_b, depth) and go(a.arg, b.arg, env_a, env_b, depth)
        return False

    return go(left, right, {}, {}, 0)
