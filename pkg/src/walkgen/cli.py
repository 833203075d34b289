"""Command line interface: ``walkgen run | goals | parse``."""

from __future__ import annotations

import argparse
import json
import sys

from walkgen.experiment import ALGORITHMS, FORMATS, ExperimentConfig, run_experiment
from walkgen.fitness import COMBINATORS
from walkgen.goals import extract_goals
from walkgen.interpreter import DEFAULT_LOOP_BUDGET
from walkgen.parser import ParseError
from walkgen.search import SearchParams
from walkgen.validation import check_program

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARSE = 2


class _ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _ConfigError(message)


def _formats(text: str) -> tuple:
    items = tuple(f.strip() for f in text.split(",") if f.strip())
    bad = [f for f in items if f not in FORMATS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"formats must be a comma list of {', '.join(FORMATS)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="walkgen", description="Random-walk test generation for C/D coverage.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run walktest or the random baseline")
    run.add_argument("--program", required=True, help="benchmark name or path to a .wt file")
    run.add_argument("--algo", choices=ALGORITHMS, default="walktest")
    run.add_argument("--reps", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    defaults = SearchParams()
    for name in ("r", "t", "m1", "m2", "q"):
        run.add_argument(f"--{name}", type=int, default=getattr(defaults, name))
    run.add_argument("--p", type=float, default=defaults.p)
    run.add_argument("--k", type=float, default=defaults.k)
    run.add_argument("--combinator", choices=COMBINATORS, default=defaults.combinator)
    run.add_argument("--loop-budget", type=int, default=DEFAULT_LOOP_BUDGET)
    run.add_argument("--random-cases", type=int, default=10_000_000)
    run.add_argument("--jobs", type=int, default=1, help="repetitions run in parallel")
    run.add_argument("--out", help="directory for per-run reports and the summary")
    run.add_argument("--format", type=_formats, default=FORMATS, help="comma list of json,csv")

    goals = sub.add_parser("goals", help="list the coverage goals of a program as JSON")
    goals.add_argument("--program", required=True)

    parse = sub.add_parser("parse", help="check that a program parses")
    parse.add_argument("--program", required=True)
    return parser


def _cmd_run(args) -> int:
    params = SearchParams(
        r=args.r, t=args.t, m1=args.m1, m2=args.m2, p=args.p, q=args.q,
        seed=args.seed, loop_budget=args.loop_budget, k=args.k, combinator=args.combinator,
    )
    cfg = ExperimentConfig(
        program=args.program, algorithm=args.algo, reps=args.reps, seed=args.seed,
        params=params, random_cases=args.random_cases, out=args.out,
        formats=args.format, jobs=args.jobs,
    )
    summary, _ = run_experiment(cfg)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_goals(args) -> int:
    model = check_program(args.program)
    print(json.dumps(extract_goals(model).to_list(), indent=2))
    return EXIT_OK


def _cmd_parse(args) -> int:
    model = check_program(args.program)
    goals = extract_goals(model)
    print(
        f"{model.name}: {len(model.variables)} inputs, {len(model.decisions)} decisions, "
        f"{len(goals)} goals"
    )
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        handler = {"run": _cmd_run, "goals": _cmd_goals, "parse": _cmd_parse}[args.command]
        return handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (_ConfigError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
