from __future__ import annotations

import json
from collections import Counter
from dataclasses import replace

import pytest
from hypothesis import given, settings

from conftest import terms
from lrank2 import fixtures
from lrank2.deriv import (
    ARROW_INTRO,
    AXIOM,
    CONTRACTION,
    EXCHANGE,
    LOLLI_ELIM,
    LOLLI_ELIM_T,
    LOLLI_INTRO,
    Derivation,
    RuleViolation,
    build_from_inference,
    check,
    check_q,
    enumerate_derivations,
    enumerate_judgments,
    exchange,
    from_json,
    is_tight,
    to_json,
)
from lrank2.fixtures import D, J
from lrank2.infer import InferenceError, infer
from lrank2.reduction import is_neutral, is_normal, normalize
from lrank2.syntax import parse
from lrank2.types import ABS, canonicalize, env_equiv, parse_type
from lrank2.unify import is_instance


def with_root(d: Derivation, **changes) -> Derivation:
    return replace(d, conclusion=replace(d.conclusion, **changes))


class TestCheckPlain:
    def test_paper_derivation(self):
        j = check(fixtures.self_application_plain())
        assert len(j.env) == 0
        assert j.type == parse_type("a -o a")

    def test_axiom(self):
        check(D(AXIOM, J([("x", "a")], "x", "a")))

    def test_axiom_needs_linear_type(self):
        with pytest.raises(RuleViolation):
            check(D(AXIOM, J([("x", "a & a -> a")], "x", "a & a -> a")))

    def test_arrow_intro_needs_two(self):
        bad = D(ARROW_INTRO, J([], r"\y. y", "a -> a"), D(AXIOM, J([("y", "a")], "y", "a")))
        with pytest.raises(RuleViolation) as info:
            check(bad)
        assert info.value.reason == "n>=2"

    def test_intro_requires_last_declaration(self):
        body = D(LOLLI_ELIM, J([("f", "a -o b"), ("x", "a")], "f x", "b"),
                 D(AXIOM, J([("f", "a -o b")], "f", "a -o b")), D(AXIOM, J([("x", "a")], "x", "a")))
        bad = D(LOLLI_INTRO, J([("x", "a")], r"\f. f x", "(a -o b) -o b"), body)
        with pytest.raises(RuleViolation):
            check(bad)
        good = D(LOLLI_INTRO, J([("x", "a")], r"\f. f x", "(a -o b) -o b"), exchange(body, 0))
        check(good)

    def test_exchange_must_swap_adjacent(self):
        body = D(AXIOM, J([("x", "a")], "x", "a"))
        with pytest.raises(RuleViolation):
            check(D(EXCHANGE, J([("x", "a")], "x", "a"), body))

    def test_contraction_concatenates(self):
        d = fixtures.self_application_plain()
        contraction = d.premises[0].premises[0]
        assert contraction.rule == CONTRACTION
        wrong = with_root(contraction, env=J([("x", "(a -o a) & ((a -o a) -o a -o a)")], "x", "a").env)
        with pytest.raises(RuleViolation):
            check(wrong)

    def test_elim_environment_is_appended(self):
        d = D(LOLLI_ELIM, J([("x", "a"), ("f", "a -o b")], "f x", "b"),
              D(AXIOM, J([("f", "a -o b")], "f", "a -o b")), D(AXIOM, J([("x", "a")], "x", "a")))
        with pytest.raises(RuleViolation) as info:
            check(d)
        assert info.value.reason == "environment-mismatch"

    def test_elim_inconsistent_environment(self):
        d = D(LOLLI_ELIM, J([("x", "a -o a")], "x x", "a"),
              D(AXIOM, J([("x", "a -o a")], "x", "a -o a")), D(AXIOM, J([("x", "a")], "x", "a")))
        with pytest.raises(RuleViolation):
            check(d)

    def test_violation_path(self):
        d = fixtures.self_application_plain()
        broken_leaf = D(AXIOM, J([("y", "a")], "y", "b"))
        id_small = replace(d.premises[2], premises=(broken_leaf,))
        bad = replace(d, premises=(d.premises[0], d.premises[1], id_small))
        with pytest.raises(RuleViolation) as info:
            check(bad)
        assert info.value.path == (2, 0)

    def test_plain_check_rejects_quantities(self):
        with pytest.raises(RuleViolation):
            check(fixtures.three_step_tight())

    def test_exchange_pairs_do_not_matter(self):
        d = fixtures.self_application_plain()
        leaf_app = d.premises[0].premises[0].premises[0]
        twice = exchange(exchange(leaf_app, 0), 0)
        contraction = d.premises[0].premises[0]
        patched = replace(contraction, premises=(twice,))
        head = replace(d.premises[0], premises=(patched,))
        assert check(replace(d, premises=(head,) + d.premises[1:])) == check(d)


class TestCheckQuantitative:
    def test_three_step(self):
        d = fixtures.three_step_tight()
        j = check_q(d)
        assert j.index == 3 and j.multitype == ABS and is_tight(d)

    def test_wrong_index(self):
        with pytest.raises(RuleViolation) as info:
            check_q(with_root(fixtures.three_step_tight(), index=2))
        assert info.value.reason == "index-mismatch"

    def test_missing_exchange_rejected(self):
        # the same tree without the Exchange before abstracting x2
        d = fixtures.three_step_tight()
        phi = d.premises[0]
        contraction = phi.premises[0]
        redex = contraction.premises[0]
        inner = redex.premises[0]
        swapped = inner.premises[0]
        assert swapped.rule == EXCHANGE
        inner2 = replace(inner, premises=swapped.premises)
        rebuilt = replace(d, premises=(
            replace(phi, premises=(replace(contraction, premises=(replace(redex, premises=(inner2, redex.premises[1])),)),)),
            *d.premises[1:]))
        with pytest.raises(RuleViolation):
            check_q(rebuilt)

    def test_tight_elim_needs_neutral_head(self):
        d = D(LOLLI_ELIM_T, J([("x", "a -o b", "Abs"), ("y", "a", "Neutral")], "x y", "b", "Neutral", 0),
              D(AXIOM, J([("x", "a -o b", "Abs")], "x", "a -o b", "Abs", 0)),
              D(AXIOM, J([("y", "a", "Neutral")], "y", "a", "Neutral", 0)))
        with pytest.raises(RuleViolation) as info:
            check_q(d)
        assert info.value.reason == "head-not-neutral"

    def test_intro_increments(self):
        d = D(LOLLI_INTRO, J([], r"\x. x", "a -o a", "Neutral -o Neutral", 0),
              D(AXIOM, J([("x", "a", "Neutral")], "x", "a", "Neutral", 0)))
        with pytest.raises(RuleViolation) as info:
            check_q(d)
        assert info.value.reason == "index-mismatch"

    def test_quantitative_check_needs_quantities(self):
        with pytest.raises(RuleViolation):
            check_q(fixtures.self_application_plain())

    def test_is_tight(self):
        assert not is_tight(D(AXIOM, J([("x", "a", "b")], "x", "a", "b", 0)))
        assert not is_tight(D(AXIOM, J([("x", "a", "Abs -o Abs")], "x", "a", "Abs -o Abs", 0)))
        assert is_tight(D(AXIOM, J([("x", "a", "Neutral")], "x", "a", "Neutral", 0)))


class TestTightFixtures:
    @pytest.mark.parametrize("name", sorted(fixtures.TIGHT))
    def test_accepted_and_tight(self, name):
        d = fixtures.TIGHT[name]()
        check_q(d)
        assert is_tight(d)

    @pytest.mark.parametrize("name", sorted(fixtures.TIGHT))
    def test_normal_subject_has_index_zero(self, name):
        j = check_q(fixtures.TIGHT[name]())
        if is_normal(j.term):
            assert j.index == 0

    @pytest.mark.parametrize("name", sorted(fixtures.TIGHT))
    def test_neutral_multitype_means_neutral_term(self, name):
        j = check_q(fixtures.TIGHT[name]())
        if is_normal(j.term) and j.multitype == parse_type("Neutral"):
            assert is_neutral(j.term)

    def test_neutrality_needs_a_normal_subject(self):
        # a redex can also be typed Neutral by a tight derivation
        j = check_q(fixtures.identity_on_variable_tight())
        assert j.multitype == parse_type("Neutral") and not is_neutral(j.term)

    @pytest.mark.parametrize("name", sorted(fixtures.TIGHT))
    def test_index_counts_steps(self, name):
        j = check_q(fixtures.TIGHT[name]())
        out = normalize(j.term, 1000)
        assert out.status == "Normal" and out.steps == j.index

    @pytest.mark.parametrize("name", sorted(fixtures.TIGHT) + ["plain"])
    def test_json_round_trip(self, name):
        d = fixtures.self_application_plain() if name == "plain" else fixtures.TIGHT[name]()
        assert from_json(json.loads(json.dumps(to_json(d)))) == d


class TestBuild:
    def test_self_application_rules(self):
        d = build_from_inference(parse(r"\x. x x"))
        check(d)
        assert Counter(d.rules()) == Counter({AXIOM: 2, LOLLI_ELIM: 1, CONTRACTION: 1, ARROW_INTRO: 1})

    def test_identity(self):
        d = build_from_inference(parse(r"\y. y"))
        assert d.rules() == [LOLLI_INTRO, AXIOM]

    def test_variable(self):
        assert build_from_inference(parse("x")).rules() == [AXIOM]

    def test_fails_with_inference(self):
        with pytest.raises(InferenceError):
            build_from_inference(parse(r"\x. y"))

    @settings(max_examples=300, deadline=None)
    @given(terms(max_depth=6))
    def test_sound(self, t):
        try:
            r = infer(t)
        except InferenceError:
            return
        j = check(build_from_inference(t))
        assert env_equiv(j.env, r.env)
        assert canonicalize(j.env, j.type) == canonicalize(r.env, r.type)


class TestEnumerate:
    def test_not_lambda_I(self):
        assert enumerate_derivations(parse(r"\x. y"), 3, 10) == []

    def test_identity(self):
        found = enumerate_derivations(parse(r"\y. y"), 1, 10)
        assert any(d.rules() == [LOLLI_INTRO, AXIOM] and d.conclusion.type == parse_type("a -o a") for d in found)
        for d in found:
            check(d)

    def test_self_application_matches_inference(self):
        t = parse(r"\x. x x")
        r = infer(t)
        found = enumerate_judgments(t, 2)
        assert found
        assert all(is_instance((r.env, r.type), j) is not None for j in found)

    def test_witnesses_check(self):
        t = parse(r"\f. \x. f (f x)")
        ds = enumerate_derivations(t, 3, 20)
        assert len(ds) == 20
        for d in ds:
            assert check(d).term == t

    def test_count_bound(self):
        assert len(enumerate_derivations(parse(r"\f. \x. f (f x)"), 3, 5)) == 5

    def test_deterministic_order(self):
        t = parse(r"\x. \y. x (y x)")
        assert enumerate_derivations(t, 3, 50) == enumerate_derivations(t, 3, 50)


class TestSharedEnumerator:
    def test_matches_fresh_enumerators(self):
        from lrank2.deriv import JudgmentEnumerator
        from lrank2.harness import all_terms

        shared = JudgmentEnumerator(2, free_names=("y",))
        for t in all_terms(5, free=("y",)):
            assert shared.classes(t) == enumerate_judgments(t, 2)

    def test_undeclared_free_variable(self):
        from lrank2.deriv import JudgmentEnumerator

        with pytest.raises(ValueError):
            JudgmentEnumerator(2).classes(parse("z"))
