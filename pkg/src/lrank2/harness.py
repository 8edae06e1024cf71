"""Random closed lambda-I terms and the index-versus-steps campaign."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from . import syntax
from .infer import InferenceError, infer_q
from .reduction import FUEL_EXHAUSTED, normalize
from .syntax import Abs, App, Term, Var

# relative weights of abstraction, application and variable nodes
WEIGHTS = (40, 40, 20)
ATTEMPTS_PER_SIZE = 500


@dataclass(frozen=True)
class GenConfig:
    max_size: int = 12
    max_binder_reuse: int = 3
    seed: int = 42
    count: int = 10_000

    def __post_init__(self) -> None:
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")


class _Dead(Exception):
    """The random walk reached a spot where no closed term fits; start over."""


def _random_term(rng: random.Random, budget: int) -> Term:
    counter = [0]

    def go(budget: int, scope: tuple[str, ...]) -> Term:
        kinds = []
        if budget >= 2:
            kinds.append(0)
        if budget >= 3 and (scope or budget >= 5):
            kinds.append(1)
        if scope:
            kinds.append(2)
        if not kinds:
            raise _Dead
        kind = rng.choices(kinds, weights=[WEIGHTS[k] for k in kinds])[0]
        if kind == 2:
            return Var(rng.choice(scope))
        if kind == 0:
            counter[0] += 1
            x = f"x{counter[0]}"
            return Abs(x, go(budget - 1, scope + (x,)))
        left = go(rng.randint(1 if scope else 2, budget - (2 if scope else 3)), scope)
        right = go(budget - 1 - syntax.size(left), scope)
        return App(left, right)

    return go(budget, ())


def binder_uses_ok(term: Term, limit: int) -> bool:
    """Every binder occurs between 1 and ``limit`` times in its body."""
    if isinstance(term, Var):
        return True
    if isinstance(term, Abs):
        n = syntax.free_occurrences(term.body)[term.var]
        return 1 <= n <= limit and binder_uses_ok(term.body, limit)
    return binder_uses_ok(term.fun, limit) and binder_uses_ok(term.arg, limit)


def iter_terms(cfg: GenConfig) -> Iterator[Term]:
    rng = random.Random(cfg.seed)
    produced = 0
    smallest = min(2, cfg.max_size)
    while produced < cfg.count:
        # the weighted walk alone mostly stops at tiny terms, so each output
        # picks a target size first and resamples until the walk hits it
        # (some sizes have no closed lambda-I term at all, hence the cap)
        target = rng.randint(smallest, cfg.max_size)
        for _ in range(ATTEMPTS_PER_SIZE):
            try:
                term = _random_term(rng, target)
            except _Dead:
                continue
            if syntax.size(term) == target and binder_uses_ok(term, cfg.max_binder_reuse):
                produced += 1
                yield term
                break


def gen_terms(cfg: GenConfig) -> list[Term]:
    """``cfg.count`` closed lambda-I terms; a pure function of ``cfg``."""
    return list(iter_terms(cfg))


def all_terms(max_size: int, free: tuple[str, ...] = ()) -> list[Term]:
    """Every term of size at most ``max_size`` up to alpha-equivalence, with free variables from ``free``."""

    def exact(n: int, scope: tuple[str, ...]) -> list[Term]:
        if n == 1:
            return [Var(v) for v in scope + free]
        x = f"x{len(scope) + 1}"
        out: list[Term] = [Abs(x, body) for body in exact(n - 1, scope + (x,))]
        for k in range(1, n - 1):
            for f in exact(k, scope):
                out.extend(App(f, a) for a in exact(n - 1 - k, scope))
        return out

    return [t for n in range(1, max_size + 1) for t in exact(n, ())]


# ---------------------------------------------------------------------------
# campaign

@dataclass(frozen=True)
class Mismatch:
    term: str
    b_inferred: int
    steps_observed: int


@dataclass(frozen=True)
class Sample:
    term: str
    b_inferred: int
    steps_observed: int
    status: str


@dataclass(frozen=True)
class ConjectureReport:
    total: int
    typable: int
    agreements: int
    mismatches: tuple = ()
    diverged: int = 0
    header: dict = field(default_factory=dict)
    samples: tuple = ()

    def to_json(self) -> dict:
        return {
            "header": self.header,
            "total": self.total,
            "typable": self.typable,
            "agreements": self.agreements,
            "diverged": self.diverged,
            "mismatches": [asdict(m) for m in self.mismatches],
            "samples": [asdict(s) for s in self.samples],
        }


def _measure(args: tuple[Term, int]) -> Optional[Sample]:
    term, fuel = args
    try:
        b = infer_q(term).steps
    except InferenceError:
        return None
    outcome = normalize(term, fuel)
    return Sample(syntax.show(term), b, outcome.steps, outcome.status)


def summarize(terms: list[Term], fuel: int, header: Optional[dict] = None, workers: int = 1) -> ConjectureReport:
    jobs = [(t, fuel) for t in terms]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_measure, jobs, chunksize=64))
    else:
        results = [_measure(job) for job in jobs]
    samples = tuple(r for r in results if r is not None)
    mismatches = tuple(
        Mismatch(s.term, s.b_inferred, s.steps_observed)
        for s in samples
        if s.status != FUEL_EXHAUSTED and s.steps_observed != s.b_inferred
    )
    diverged = sum(1 for s in samples if s.status == FUEL_EXHAUSTED)
    return ConjectureReport(
        total=len(terms),
        typable=len(samples),
        agreements=len(samples) - len(mismatches) - diverged,
        mismatches=mismatches,
        diverged=diverged,
        header=dict(header or {}),
        samples=samples,
    )


def run_conjecture(cfg: GenConfig, fuel: int, workers: int = 1) -> ConjectureReport:
    """Compare the inferred index with the observed number of leftmost-outermost steps."""
    header = {
        "seed": cfg.seed,
        "count": cfg.count,
        "max_size": cfg.max_size,
        "max_binder_reuse": cfg.max_binder_reuse,
        "fuel": fuel,
        "generator": "closed lambda-I terms; node weights abs/app/var = %d/%d/%d" % WEIGHTS,
    }
    return summarize(gen_terms(cfg), fuel, header, workers)


def write_report(report: ConjectureReport, path: Path) -> None:
    Path(path).write_text(json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n")


def write_mismatch_fixtures(report: ConjectureReport, path: Path) -> int:
    """Dump mismatching terms so they can be replayed with ``lrank2 infer -q`` and ``lrank2 eval``."""
    data = [{"term": m.term, "b_inferred": m.b_inferred, "steps_observed": m.steps_observed}
            for m in report.mismatches]
    Path(path).write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    return len(data)
