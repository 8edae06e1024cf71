"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import json
import random
import time

import pytest

from conftest import ACCEPTANCE, more_general, planted_problem
from lrank2 import fixtures
from lrank2.deriv import JudgmentEnumerator, build_from_inference, check, check_q, is_tight
from lrank2.harness import GenConfig, all_terms, gen_terms, run_conjecture, write_mismatch_fixtures
from lrank2.infer import InferenceError, infer, infer_q
from lrank2.reduction import NORMAL, is_normal, normalize
from lrank2.syntax import alpha_eq, fv, parse, show
from lrank2.types import Env, TVar, apply_subst, canonicalize, env_equiv, parse_type
from lrank2.unify import is_instance, unify, unify_q


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[n] = line
    print(line)


def soundness_corpus():
    return gen_terms(GenConfig(count=1000, max_size=10, seed=2024))


def test_1_worked_examples():
    start = time.perf_counter()
    checks = {}

    r = infer(parse(r"\x. x x")).canonical()
    checks["infer self-application"] = (r.env, r.type) == (Env(), parse_type("(a0 -o a1) & a0 -> a1"))

    r = infer(parse(r"(\x. x x) (\y. y)")).canonical()
    checks["infer applied self-application"] = (r.env, r.type) == (Env(), parse_type("a0 -o a0"))

    checks["index 2"] = infer_q(parse(r"(\x. x x) (\y. y)")).steps == 2

    checks["unify example"] = unify(((parse_type("a1 -o a1"), parse_type("a2 -o a3")),)) == {
        "a1": TVar("a3"), "a2": TVar("a3"),
    }

    _, count = unify_q(((parse_type("a1 -o a1"), parse_type("a3 -o a4")), (parse_type("a2 -o a2"), TVar("a3"))))
    checks["unify_q counter"] = count == 1

    out = normalize(parse(r"(\x1. (\x2. x2 x1) x1) (\y. y)"), 100)
    checks["three LO steps"] = out.status == NORMAL and out.steps == 3 and alpha_eq(out.result, parse(r"\y. y"))

    d = fixtures.three_step_tight()
    j = check_q(d)
    checks["tight derivation"] = j.index == 3 and is_tight(d)

    try:
        infer(parse(r"(\x. x x) (\f. \x. f (f x))"))
        checks["untypable example"] = False
    except InferenceError:
        checks["untypable example"] = True

    elapsed = time.perf_counter() - start
    failed = [k for k, ok in checks.items() if not ok]
    ok = not failed and elapsed < 1.0
    record(1, ok, f"{len(checks) - len(failed)}/{len(checks)} worked examples reproduced in {elapsed:.2f}s"
           + (f"; failed: {failed}" if failed else ""))
    assert ok


def test_2_soundness():
    start = time.perf_counter()
    corpus = soundness_corpus()
    typable, failures = 0, []
    for t in corpus:
        try:
            r = infer(t)
        except InferenceError:
            continue
        typable += 1
        try:
            j = check(build_from_inference(t))
            if not (env_equiv(j.env, r.env) and canonicalize(j.env, j.type)[1] == canonicalize(r.env, r.type)[1]
                    and j.term == t):
                failures.append(show(t))
        except Exception as err:  # any crash counts as a failure
            failures.append(f"{show(t)}: {err}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    record(2, ok, f"{typable}/{len(corpus)} typable terms, {len(failures)} derivation failures, {elapsed:.1f}s")
    assert ok, failures[:5]


@pytest.mark.slow
def test_3_completeness():
    start = time.perf_counter()
    corpus = all_terms(7, free=("y",))
    search = JudgmentEnumerator(type_depth=3, max_seq=3, free_names=("y",))
    nonempty, violations = 0, []
    for t in corpus:
        found = search.classes(t)
        if not found:
            continue
        nonempty += 1
        try:
            r = infer(t)
        except InferenceError as err:
            violations.append(f"{show(t)}: {err}")
            continue
        for env, ty in found:
            if is_instance((r.env, r.type), (env, ty)) is None:
                violations.append(f"{show(t)}: {env} |- {ty}")
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 300
    record(3, ok, f"{len(corpus)} terms of size <= 7, {nonempty} with derivations, "
                  f"{len(violations)} violations, {elapsed:.0f}s")
    assert ok, violations[:5]


def test_4_relevance():
    corpus = soundness_corpus()
    checked, violations = 0, []
    for t in corpus:
        try:
            r = infer(t)
        except InferenceError:
            continue
        checked += 1
        if set(r.env.dom()) != set(fv(t)):
            violations.append(show(t))
    ok = not violations
    record(4, ok, f"dom(env) = fv(term) on {checked} inference results, {len(violations)} violations")
    assert ok


def test_5_mgu():
    start = time.perf_counter()
    rng = random.Random(5)
    violations = 0
    for _ in range(500):
        problem, planted = planted_problem(rng, equations=rng.randint(1, 4))
        s = unify(problem)
        unifies = all(apply_subst(s, lhs) == apply_subst(s, rhs) for lhs, rhs in problem)
        if not (unifies and more_general(s, planted, problem)):
            violations += 1
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 5
    record(5, ok, f"500 planted problems, {violations} violations, {elapsed:.2f}s")
    assert ok


def test_6_normal_forms_have_index_zero():
    seen, bad = 0, []
    for name, make in sorted(fixtures.TIGHT.items()):
        d = make()
        j = check_q(d)
        if is_tight(d) and is_normal(j.term):
            seen += 1
            if j.index != 0:
                bad.append(name)
    ok = seen > 0 and not bad
    record(6, ok, f"{seen} tight fixtures with normal subjects, {len(bad)} with nonzero index")
    assert ok


def test_7_tight_index_counts_steps():
    results = []
    for name, make in sorted(fixtures.TIGHT.items()):
        j = check_q(make())
        out = normalize(j.term, 10_000)
        results.append((name, j.index, out.steps, out.status == NORMAL and out.steps == j.index))
    bad = [r for r in results if not r[3]]
    ok = not bad
    detail = ", ".join(f"{n}={b}" for n, b, _, _ in results)
    record(7, ok, f"index equals LO steps on {len(results) - len(bad)}/{len(results)} tight fixtures ({detail})")
    assert ok


@pytest.fixture(scope="module")
def campaign():
    start = time.perf_counter()
    report = run_conjecture(GenConfig(count=10_000, max_size=12, seed=42), fuel=10_000)
    return report, time.perf_counter() - start


def test_8_conjecture_campaign(campaign, tmp_path):
    report, elapsed = campaign
    if report.mismatches:
        path = tmp_path / "mismatches.json"
        write_mismatch_fixtures(report, path)
        print(f"counterexamples written to {path}:")
        print(json.dumps([m.__dict__ for m in report.mismatches[:20]], indent=2))
    accounting = report.typable == report.agreements + len(report.mismatches) + report.diverged
    status = "PASS" if not report.mismatches else "FINDING"
    line = (f"criterion 8: {status} - seed 42, {report.total} terms, {report.typable} typable, "
            f"{report.agreements} agreements, {len(report.mismatches)} mismatches, "
            f"{report.diverged} diverged, {elapsed:.0f}s")
    ACCEPTANCE[8] = line
    print(line)
    # mismatches are reported, not failed; the conjecture profile below hard-fails on them
    assert accounting and elapsed < 300


@pytest.mark.conjecture
def test_8_conjecture_strict(campaign):
    report, _ = campaign
    assert not report.mismatches, report.mismatches[:5]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
