"""``lrank2`` command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 untypable term (or no
unifier), 3 rule violation in ``check``, 4 conjecture mismatch found.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import deriv, harness, syntax
from .infer import InferenceError, infer, infer_q
from .reduction import normalize, reduction_sequence
from .types import TypeSyntaxError, canonicalize, parse_type, show_env, show_type
from .unify import UnificationError, unify_q

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNTYPABLE = 2
EXIT_VIOLATION = 3
EXIT_MISMATCH = 4


class _Usage(Exception):
    pass


def _read_term(args: argparse.Namespace) -> syntax.Term:
    if args.file is not None and args.expr is not None:
        raise _Usage("give either an expression or -f FILE, not both")
    if args.file is not None:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    elif args.expr == "-":
        text = sys.stdin.read()
    elif args.expr is not None:
        text = args.expr
    else:
        raise _Usage("missing expression")
    return syntax.parse(text.strip())


def _cmd_infer(args: argparse.Namespace) -> int:
    term = _read_term(args)
    try:
        result = infer_q(term) if args.quantitative else infer(term)
    except InferenceError as err:
        print(f"untypable: {err}", file=sys.stderr)
        return EXIT_UNTYPABLE
    env, t = canonicalize(result.env, result.type)
    print(f"{show_env(env)} |- {syntax.show(term)} : {show_type(t)}")
    if args.quantitative:
        print(f"steps={result.steps}")
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    term = _read_term(args)
    if args.trace:
        for i, reduct in enumerate(reduction_sequence(term), start=1):
            if i > args.fuel:
                break
            print(f"{i}: {syntax.show(reduct)}")
    outcome = normalize(term, args.fuel)
    print(syntax.show(outcome.result))
    print(f"steps={outcome.steps} status={outcome.status}")
    return EXIT_OK


def _parse_equations(texts: Sequence[str]) -> tuple:
    problem = []
    for text in texts:
        for part in text.split(";"):
            if not part.strip():
                continue
            if part.count("=") != 1:
                raise _Usage(f"equation must contain exactly one '=': {part.strip()!r}")
            lhs, rhs = part.split("=")
            problem.append((parse_type(lhs), parse_type(rhs)))
    if not problem:
        raise _Usage("no equations given")
    return tuple(problem)


def _cmd_unify(args: argparse.Namespace) -> int:
    problem = _parse_equations(args.equations)
    try:
        s, count = unify_q(problem)
    except UnificationError as err:
        print(f"no unifier: {err}", file=sys.stderr)
        return EXIT_UNTYPABLE
    except TypeError as err:
        raise _Usage(str(err)) from err
    for var in sorted(s):
        print(f"{var} := {show_type(s[var])}")
    print(f"decompositions={count}")
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        data = json.loads(Path(args.derivation).read_text())
        d = deriv.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as err:
        raise _Usage(f"cannot read derivation: {err}") from err
    quantitative = d.conclusion.index is not None or d.conclusion.multitype is not None
    out: dict = {"quantitative": quantitative}
    try:
        j = deriv.check_q(d) if quantitative else deriv.check(d)
    except deriv.RuleViolation as err:
        out.update(ok=False, rule=err.rule, reason=err.reason, path=list(err.path), message=str(err))
        if args.json:
            print(json.dumps(out, ensure_ascii=False))
        else:
            print(f"rejected: {err}")
        return EXIT_VIOLATION
    out.update(ok=True, judgment=deriv.judgment_to_json(j))
    if quantitative:
        out["tight"] = deriv.is_tight(d)
    if args.json:
        print(json.dumps(out, ensure_ascii=False))
    else:
        print(f"ok: {j}")
        if quantitative:
            print(f"tight={'true' if out['tight'] else 'false'}")
    return EXIT_OK


def _cmd_conjecture(args: argparse.Namespace) -> int:
    cfg = harness.GenConfig(max_size=args.max_size, max_binder_reuse=args.max_binder_reuse,
                            seed=args.seed, count=args.count)
    report = harness.run_conjecture(cfg, args.fuel, workers=args.workers)
    if args.out:
        harness.write_report(report, args.out)
    if args.figure or args.csv:
        from . import report as figures

        if args.figure:
            figures.plot_index_vs_steps(report, args.figure)
        if args.csv:
            figures.write_csv(report, args.csv)
    if args.mismatches:
        harness.write_mismatch_fixtures(report, args.mismatches)
    print(f"total={report.total} typable={report.typable} agreements={report.agreements} "
          f"mismatches={len(report.mismatches)} diverged={report.diverged}")
    for m in report.mismatches:
        print(f"mismatch: {m.term} b={m.b_inferred} steps={m.steps_observed}")
    return EXIT_MISMATCH if report.mismatches else EXIT_OK


def _cmd_fixtures(args: argparse.Namespace) -> int:
    from . import fixtures

    for path in fixtures.dump(Path(args.out)):
        print(path)
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("expr", nargs="?", help="lambda term, or '-' for stdin")
    p.add_argument("-f", "--file", help="read the term from FILE ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrank2", description="Linear rank 2 intersection types for the lambda calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", help="infer an environment and a type")
    p.add_argument("-q", "--quantitative", action="store_true", help="also infer the step index")
    _add_input(p)
    p.set_defaults(run=_cmd_infer)

    p = sub.add_parser("eval", help="leftmost-outermost normalization")
    p.add_argument("--fuel", type=int, default=10_000)
    p.add_argument("--trace", action="store_true", help="print every intermediate term")
    _add_input(p)
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("unify", help="solve equations such as 'a -o a = b -o c'")
    p.add_argument("equations", nargs="+", help="equations, also accepted ';'-separated")
    p.set_defaults(run=_cmd_unify)

    p = sub.add_parser("check", help="check a derivation stored as JSON")
    p.add_argument("derivation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("conjecture", help="compare inferred indices with observed step counts")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--max-size", type=int, default=12)
    p.add_argument("--max-binder-reuse", type=int, default=3)
    p.add_argument("--fuel", type=int, default=10_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--figure", help="write an index-versus-steps scatter plot here (PNG, SVG, PDF)")
    p.add_argument("--csv", help="write one row per typable term here")
    p.add_argument("--mismatches", help="write mismatching terms here as replayable JSON")
    p.set_defaults(run=_cmd_conjecture)

    p = sub.add_parser("fixtures", help="write the bundled example derivations as JSON")
    p.add_argument("--out", required=True)
    p.set_defaults(run=_cmd_fixtures)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.run(args)
    except _Usage as err:
        print(f"lrank2 {args.command}: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (syntax.ParseError, TypeSyntaxError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"lrank2 {args.command}: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
