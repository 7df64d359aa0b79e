"""Command-line front end.

Subcommands: solve, enumerate, simulate, construct, bounds, verify.

Exit codes: 0 success, 1 semantic failure (an invalid witness), 2 usage or
parse error, 3 budget refused. For a fixed seed every command's output is
byte-identical for any --workers setting.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .core import BudgetExceededError, TwinWitness, Word, verify_twins
from .parallel import resolve_workers

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_word(args) -> Word:
    if getattr(args, "word", None) is not None:
        text = args.word
    elif getattr(args, "file", None) is not None:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise CliError(f"cannot read word file: {exc}", EXIT_USAGE)
    else:
        raise CliError("need --word or --file", EXIT_USAGE)
    try:
        return Word.from_text(text, k=args.k)
    except ValueError as exc:
        raise CliError(f"cannot parse word: {exc}", EXIT_USAGE)


def _cmd_solve(args) -> int:
    from .solver import longest_twins_fast, longest_twins_oracle

    word = _load_word(args)
    if args.mode == "oracle":
        result = longest_twins_oracle(word, args.r, node_budget=args.node_budget)
    else:
        result = longest_twins_fast(word, args.r)
    report = {
        "length": result.length,
        "witness": result.witness.to_json_obj(),
        "nodesExplored": result.nodes_explored,
        "mode": args.mode,
        "r": args.r,
    }
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    from .enumerator import format_rho, lambda_table, rho, table_to_csv

    workers = resolve_workers(args.workers)
    table = lambda_table(
        args.k,
        args.s,
        symmetry_reduction=not args.no_symmetry,
        workers=workers,
        extended=args.extended,
        checkpoint_path=args.checkpoint,
    )
    sys.stdout.write(table_to_csv(table))
    sys.stdout.write("# " + format_rho(rho(table)) + "\n")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    from .models import ModelSpec, RandomStream, run_experiment
    from .plots import histogram_csv, histogram_svg

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read config: {exc}", EXIT_USAGE)
    try:
        model = ModelSpec.from_json_obj(config["model"])
        statistic = config["statistic"]
        trials = int(config["trials"])
        seed = int(config["seed"])
        stream_index = int(config.get("streamIndex", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"invalid config: {exc}", EXIT_USAGE)
    workers = resolve_workers(args.workers)
    try:
        summary = run_experiment(
            model, statistic, trials, RandomStream(seed, stream_index), workers=workers
        )
    except ValueError as exc:
        raise CliError(f"invalid config: {exc}", EXIT_USAGE)
    print(json.dumps(summary.to_json_obj(), sort_keys=True))
    if args.histogram:
        with open(args.histogram, "w", encoding="utf-8") as fh:
            fh.write(histogram_csv(summary))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(histogram_svg(summary))
    return EXIT_OK


def _cmd_construct(args) -> int:
    from .constructions import boost_pipeline, interlace, segment_concat

    word = _load_word(args)
    covered: Optional[int] = None
    if args.method == "segment":
        witness = segment_concat(word, args.s, args.solver)
        parameters = {"s": args.s, "solver": args.solver}
    elif args.method == "interlace":
        try:
            result = interlace(word, args.r, args.m)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_USAGE)
        witness = result.witness
        covered = result.covered
        parameters = {"r": args.r, "m": args.m}
    else:  # boost-pipeline
        try:
            witness = boost_pipeline(
                word, args.k_prime, args.r, "segment_concat", s=args.s, solver=args.solver
            )
        except ValueError as exc:
            raise CliError(str(exc), EXIT_USAGE)
        parameters = {"kPrime": args.k_prime, "r": args.r, "s": args.s, "solver": args.solver}
    report = {
        "method": args.method,
        "parameters": parameters,
        "length": witness.length,
        "witness": witness.to_json_obj(),
    }
    if covered is not None:
        report["covered"] = covered
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    from .bounds import bound_coefficient, coefficient_csv, table1, table2

    if args.table is not None:
        values = table1() if args.table == 1 else table2()
    elif args.name is not None:
        try:
            values = [bound_coefficient(args.name, args.k, args.r)]
        except ValueError as exc:
            raise CliError(str(exc), EXIT_USAGE)
    else:
        raise CliError("need --table or --name", EXIT_USAGE)
    sys.stdout.write(coefficient_csv(values))
    return EXIT_OK


def _cmd_verify(args) -> int:
    word = _load_word(args)
    try:
        with open(args.witness, "r", encoding="utf-8") as fh:
            witness = TwinWitness.from_json(fh.read())
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise CliError(f"cannot parse witness: {exc}", EXIT_USAGE)
    result = verify_twins(word, witness)
    if result.valid:
        print(json.dumps({"valid": True, "length": result.length}, sort_keys=True))
        return EXIT_OK
    print(json.dumps({"valid": False, "reason": result.defect.value}, sort_keys=True))
    return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twins",
        description="Twins in words: solve, enumerate, simulate, construct, bounds, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_word_args(p):
        p.add_argument("--word", help="the word as text (letters a..z or comma-separated ints)")
        p.add_argument("--file", help="file containing the word text")
        p.add_argument("--k", type=int, default=None, help="alphabet size (default: inferred)")

    p = sub.add_parser("solve", help="exact longest r-twins of a word")
    add_word_args(p)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--mode", choices=["fast", "oracle"], default="fast")
    p.add_argument("--node-budget", type=int, default=10**9)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("enumerate", help="exact lambda table over all k^s words")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--extended", action="store_true", help="allow large instances (s up to 14 for k=3)")
    p.add_argument("--checkpoint", help="JSON checkpoint path for resumable runs")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-symmetry", action="store_true", help="disable orbit reduction")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("simulate", help="run a Monte Carlo experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--histogram", help="write the histogram as CSV here")
    p.add_argument("--svg", help="write a static SVG histogram here")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("construct", help="build twins with a named construction")
    add_word_args(p)
    p.add_argument("--method", choices=["segment", "interlace", "boost-pipeline"], required=True)
    p.add_argument("--s", type=int, default=14, help="segment length (segment / boost-pipeline)")
    p.add_argument("--m", type=int, default=10, help="segment count (interlace)")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k-prime", type=int, default=2, help="start alphabet (boost-pipeline)")
    p.add_argument("--solver", choices=["fast", "oracle"], default="fast")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("bounds", help="coefficient tables and single bound values")
    p.add_argument("--table", type=int, choices=[1, 2])
    p.add_argument("--name", choices=["bz1", "bz2", "thm12", "bzr", "pi"])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--r", type=int, default=None)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="check a witness JSON against a word")
    add_word_args(p)
    p.add_argument("--witness", required=True, help="witness JSON file")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
