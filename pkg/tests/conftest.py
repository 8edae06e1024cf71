from __future__ import annotations

from hypothesis import strategies as st

from lrank2.syntax import Abs, App, Term, Var
from lrank2.types import Lolli, TVar


def terms(max_depth: int = 5, free=("u", "v")) -> st.SearchStrategy[Term]:
    """Arbitrary terms (open or closed) with binders x1, x2, ..."""

    def build(depth: int, scope: tuple[str, ...]) -> st.SearchStrategy[Term]:
        names = list(scope) + list(free)
        leaf = st.sampled_from(names).map(Var)
        if depth == 0:
            return leaf
        x = f"x{len(scope) + 1}"
        return st.one_of(
            leaf,
            st.deferred(lambda: build(depth - 1, scope + (x,))).map(lambda b: Abs(x, b)),
            st.tuples(build(depth - 1, scope), build(depth - 1, scope)).map(lambda p: App(*p)),
        )

    return build(max_depth, ())


def linear_types(names=("a", "b", "c")) -> st.SearchStrategy:
    return st.recursive(
        st.sampled_from(names).map(TVar),
        lambda inner: st.tuples(inner, inner).map(lambda p: Lolli(*p)),
        max_leaves=8,
    )


def random_linear_type(rng, names, max_depth: int):
    if max_depth == 0 or rng.random() < 0.3:
        return TVar(rng.choice(names))
    return Lolli(random_linear_type(rng, names, max_depth - 1), random_linear_type(rng, names, max_depth - 1))


def planted_problem(rng, equations: int = 3, max_depth: int = 4):
    """A solvable problem together with a unifier that was planted in it.

    Each equation starts from one ground-ish type w; both sides are copies of w
    with random subterms abstracted into variables v0, v1, ...; the map from
    those variables back to their subterms unifies every equation.
    """
    base = ("p", "q", "r")
    planted: dict = {}
    by_subterm: dict = {}

    def abstract(t):
        if rng.random() < 0.35:
            if t in by_subterm and rng.random() < 0.5:
                return TVar(by_subterm[t])
            v = f"v{len(planted)}"
            planted[v] = t
            by_subterm[t] = v
            return TVar(v)
        if isinstance(t, Lolli):
            return Lolli(abstract(t.left), abstract(t.right))
        return t

    problem = []
    for _ in range(equations):
        w = random_linear_type(rng, base, max_depth)
        problem.append((abstract(w), abstract(w)))
    return tuple(problem), planted


def more_general(s: dict, planted: dict, problem) -> bool:
    """True when some rho satisfies rho(s(v)) == planted(v) for every variable v of the problem."""
    from lrank2.types import apply_subst, type_vars
    from lrank2.unify import match

    names = sorted({a for lhs, rhs in problem for a in type_vars(lhs) + type_vars(rhs)})
    general, specific = TVar("_end"), TVar("_end")
    for a in names:
        general = Lolli(apply_subst(s, TVar(a)), general)
        specific = Lolli(apply_subst(planted, TVar(a)), specific)
    return match(general, specific) is not None


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
