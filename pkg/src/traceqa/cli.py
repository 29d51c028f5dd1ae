"""Command-line interface for the episode-memory benchmark pipeline.

Subcommands cover the full loop: simulate a seeded episode, generate its
question suite, answer it with the reference oracle, score predictions, and
inspect or validate the artifacts. Exit codes: 0 on success, 1 when the
requested operation finds problems (validation failures, unreadable inputs),
2 for command-line usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from traceqa.envs import DEFAULT_STEPS, GAMES, run_episode
from traceqa.generator import (
    GenerationConfig,
    generate_suite,
    parse_predictions,
    parse_qa,
    serialize_predictions,
    serialize_qa,
)
from traceqa.oracle import answer_suite
from traceqa.scoring import score_suite
from traceqa.trace import TraceFormatError, load_episode, save_episode, validate_trace


def _cmd_simulate(args) -> int:
    trace, sidecar = run_episode(args.env, args.seed, args.policy, args.max_steps)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_episode(trace, sidecar, out / "trace.jsonl", out / "sidecar.jsonl")
    print(f"{trace.run_id}: {trace.length} steps -> {out}/trace.jsonl")
    return 0


def _cmd_generate(args) -> int:
    trace, sidecar = load_episode(args.trace, args.sidecar)
    config = GenerationConfig(
        question_seed=args.question_seed,
        max_per_type=args.max_per_type,
        horizon=args.horizon,
        paraphrase=args.paraphrase,
    )
    suite = generate_suite(trace, sidecar, config)
    Path(args.out).write_text(serialize_qa(suite), encoding="utf-8")
    print(f"{trace.run_id}: {len(suite)} questions -> {args.out}")
    return 0


def _cmd_answer(args) -> int:
    suite = parse_qa(Path(args.qa).read_text(encoding="utf-8"))
    predictions = answer_suite(suite)
    Path(args.out).write_text(serialize_predictions(predictions), encoding="utf-8")
    print(f"{len(predictions)} answers -> {args.out}")
    return 0


def _cmd_score(args) -> int:
    suite = parse_qa(Path(args.qa).read_text(encoding="utf-8"))
    predictions = parse_predictions(Path(args.predictions).read_text(encoding="utf-8"))
    report = score_suite(suite, predictions)
    Path(args.out).write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"accuracy={report['accuracy']} f1={report['f1']} -> {args.out}")
    return 0


def _cmd_report(args) -> int:
    report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    print(f"questions: {report['total_questions']}  answered: {report['answered']}")
    print(
        f"accuracy: {report['accuracy']}  precision: {report['precision']}  "
        f"recall: {report['recall']}  f1: {report['f1']}"
    )
    print("per ability:")
    for ability in sorted(report["abilities"]):
        row = report["abilities"][ability]
        print(f"  {ability:12s} n={row['count']:3d}  accuracy={row['accuracy']}")
    return 0


def _cmd_validate(args) -> int:
    try:
        trace, sidecar = load_episode(args.trace, args.sidecar)
    except (TraceFormatError, OSError) as exc:
        print(f"unreadable episode: {exc}", file=sys.stderr)
        return 1
    problems = validate_trace(trace, sidecar)
    if problems:
        for problem in problems:
            print(problem, file=sys.stderr)
        return 1
    print(f"{trace.run_id}: {trace.length} steps, no problems")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traceqa",
        description="Generate and score memory QA suites from recorded game episodes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="play a seeded built-in episode")
    p.add_argument("--env", choices=sorted(GAMES), required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--policy", default=None)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("generate", help="build the question suite for an episode")
    p.add_argument("--trace", required=True)
    p.add_argument("--sidecar", default=None)
    p.add_argument("--question-seed", type=int, default=42)
    p.add_argument("--max-per-type", type=int, default=2)
    p.add_argument("--horizon", type=int, default=-1)
    p.add_argument("--paraphrase", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("answer", help="answer a suite with the reference oracle")
    p.add_argument("--qa", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_answer)

    p = sub.add_parser("score", help="grade predictions against a suite")
    p.add_argument("--qa", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("report", help="print a scored report")
    p.add_argument("--report", required=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("validate", help="check an episode for format problems")
    p.add_argument("--trace", required=True)
    p.add_argument("--sidecar", default=None)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
