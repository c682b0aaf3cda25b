"""Command-line interface.

Subcommands:
  solve           read a problem document and search for an envy-free division
  verify-lemma    run the determinant-sum and projection suites
  verify-theorem  run the witness-existence suite (scan only for composite n)
  subdivide       build an iterated symmetric subdivision and report statistics
  check-input     validate a problem document without solving it

Every option may also be supplied through the environment as FAIRSLICE_<NAME>
(FAIRSLICE_MAX_DEPTH=3, FAIRSLICE_TARGET_GAP=1/50, ...); explicit flags win.
FAIRSLICE_PURE=1 additionally forces the pure-Python kernel backend.

Exit codes: 0 success, 1 malformed or missing input, 2 resource budget
exceeded, 3 violated assumption or internal invariant, 4 missing witness
where the theory promises one (a reproducer document is written).
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction as Q
from typing import Callable, Optional, TypeVar

from . import __version__
from .errors import (
    AssumptionViolationError,
    BudgetExceededError,
    InputFormatError,
    InvariantViolationError,
    PreconditionError,
    WitnessNotFoundError,
)
from .geometry import format_rational, parse_rational
from .io import dump_json, problem_from_json, result_to_json, write_repro
from .preferences import validate_full_division
from .solver import solve
from .sperner import _is_prime, det_sum
from .suites import (
    corrupt_point_labeling,
    det_sum_suite,
    existence_suite,
    projection_suite,
    scan_suite,
)
from .triangulation import (
    DEFAULT_BUDGET,
    check_budget,
    check_owner,
    is_nice,
    mesh_size,
    owner_labeling,
    sd_pow,
    supports_comparable,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_ASSUMPTION = 3
EXIT_NO_WITNESS = 4

ENV_PREFIX = "FAIRSLICE_"

T = TypeVar("T")


def _resolve(flag_value: Optional[T], name: str, cast: Callable[[str], T], fallback: T) -> T:
    """Flag beats environment beats built-in default."""
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is not None:
        return cast(raw)
    return fallback


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(document: dict, output: Optional[str]) -> None:
    text = dump_json(document, output)
    if not output:
        sys.stdout.write(text)


def _repro_dir(output: Optional[str]) -> str:
    if output:
        return os.path.dirname(os.path.abspath(output)) or "."
    return "."


def cmd_solve(args: argparse.Namespace) -> int:
    input_path = _resolve(args.input, "INPUT", str, None)
    if input_path is None:
        raise InputFormatError("no input document given (use --input or FAIRSLICE_INPUT)")
    output = _resolve(args.output, "OUTPUT", str, None)
    max_depth = _resolve(args.max_depth, "MAX_DEPTH", int, None)
    target_gap = parse_rational(_resolve(args.target_gap, "TARGET_GAP", str, "1/20"))
    budget = _resolve(args.budget, "BUDGET", int, DEFAULT_BUDGET)
    # Accepted for interface parity; the search itself is deterministic.
    _resolve(args.seed, "SEED", int, 0)
    mode = _resolve(args.mode, "MODE", str, "det")
    jobs = _resolve(args.jobs, "JOBS", int, 1)

    problem = problem_from_json(_read_text(input_path))
    try:
        result = solve(
            problem,
            max_depth=max_depth,
            target_gap=target_gap,
            budget=budget,
            mode=mode,
            jobs=jobs,
        )
    except WitnessNotFoundError as exc:
        path = write_repro(exc.instance, _repro_dir(output))
        print(f"error: {exc}", file=sys.stderr)
        print(f"reproducer written to {path}", file=sys.stderr)
        return EXIT_NO_WITNESS
    _emit(result_to_json(result), output)
    return EXIT_BUDGET if result.status == "budget-exhausted" else EXIT_OK


def cmd_verify_lemma(args: argparse.Namespace) -> int:
    n = _resolve(args.n, "N", int, None)
    if n is None:
        raise InputFormatError("--n is required")
    depth = _resolve(args.depth, "DEPTH", int, 1)
    trials = _resolve(args.trials, "TRIALS", int, 50)
    seed = _resolve(args.seed, "SEED", int, 0)
    jobs = _resolve(args.jobs, "JOBS", int, 1)
    output = _resolve(args.output, "OUTPUT", str, None)

    if args.corrupt:
        tri = sd_pow(n, depth)
        labeling = corrupt_point_labeling(tri)
        try:
            det_sum(labeling, jobs=jobs)
        except InvariantViolationError as exc:
            print(f"corruption detected as intended: {exc}", file=sys.stderr)
            return EXIT_ASSUMPTION
        print("error: corrupted labeling went undetected", file=sys.stderr)
        return EXIT_NO_WITNESS

    report = {
        "det_sum": det_sum_suite(n, depth, trials, seed, jobs=jobs),
        "projection": projection_suite(n, trials, seed),
    }
    report["passed"] = report["det_sum"]["passed"] and report["projection"]["passed"]
    _emit(report, output)
    return EXIT_OK if report["passed"] else EXIT_NO_WITNESS


def cmd_verify_theorem(args: argparse.Namespace) -> int:
    n = _resolve(args.n, "N", int, None)
    if n is None:
        raise InputFormatError("--n is required")
    depth = _resolve(args.depth, "DEPTH", int, 1)
    trials = _resolve(args.trials, "TRIALS", int, 20)
    seed = _resolve(args.seed, "SEED", int, 0)
    mode = _resolve(args.mode, "MODE", str, "det")
    budget = _resolve(args.budget, "BUDGET", int, DEFAULT_BUDGET)
    output = _resolve(args.output, "OUTPUT", str, None)

    check_budget(n, depth, budget)
    if n >= 2 and not (_is_prime(n) or n == 4):
        print(
            f"n={n} carries no existence guarantee; reporting a scan instead",
            file=sys.stderr,
        )
        _emit(scan_suite(n, depth, trials, seed), output)
        return EXIT_OK

    report = existence_suite(n, depth, trials, seed, mode=mode)
    _emit(report, output)
    if not report["passed"]:
        path = write_repro(report["failures"][0]["instance"], _repro_dir(output))
        print(f"witness missing; reproducer written to {path}", file=sys.stderr)
        return EXIT_NO_WITNESS
    return EXIT_OK


def cmd_subdivide(args: argparse.Namespace) -> int:
    n = _resolve(args.n, "N", int, None)
    if n is None:
        raise InputFormatError("--n is required")
    depth = _resolve(args.depth, "DEPTH", int, 1)
    budget = _resolve(args.budget, "BUDGET", int, DEFAULT_BUDGET)
    output = _resolve(args.output, "OUTPUT", str, None)

    tri = sd_pow(n, depth, budget)
    document = {
        "n": n,
        "depth": depth,
        "vertices": len(tri.vertices),
        "simplices": len(tri.simplices),
        "mesh": format_rational(mesh_size(tri)),
        "symmetric": is_nice(tri)[0],
        "supports_comparable": supports_comparable(tri),
        "owner_labeling_valid": (
            check_owner(tri, owner_labeling(tri))[0] if depth >= 1 else None
        ),
    }
    _emit(document, output)
    return EXIT_OK


def cmd_check_input(args: argparse.Namespace) -> int:
    input_path = _resolve(args.input, "INPUT", str, None)
    if input_path is None:
        raise InputFormatError("no input document given (use --input or FAIRSLICE_INPUT)")
    output = _resolve(args.output, "OUTPUT", str, None)

    problem = problem_from_json(_read_text(input_path))
    players = []
    all_ok = True
    for player, oracle in enumerate(problem.oracles, start=1):
        report = validate_full_division(oracle, problem.n, player=player)
        entry = {
            "player": player,
            "kind": oracle.kind,
            "passed": report["passed"],
            "samples_checked": report["samples_checked"],
        }
        if report["witness"] is not None:
            point, reason = report["witness"]
            entry["witness"] = {
                "point": [format_rational(c) for c in point],
                "reason": reason,
            }
        players.append(entry)
        all_ok = all_ok and report["passed"]
    _emit({"n": problem.n, "passed": all_ok, "players": players}, output)
    return EXIT_OK if all_ok else EXIT_ASSUMPTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairslice",
        description="Exact envy-free division of [0, 1] for players who may refuse every piece.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("solve", help="search for an envy-free division")
    p.add_argument("--input", help="problem document (JSON file, or - for stdin)")
    p.add_argument("--output", help="write the result document here instead of stdout")
    p.add_argument("--max-depth", dest="max_depth", type=int, help="refinement depth limit")
    p.add_argument("--target-gap", dest="target_gap", help='acceptable gap as a rational, e.g. "1/20"')
    p.add_argument("--budget", type=int, help="simplex-count budget per refinement")
    p.add_argument("--seed", type=int, help="accepted for interface parity")
    p.add_argument("--mode", choices=("det", "matching"), help="witness search mode")
    p.add_argument("--jobs", type=int, help="worker processes for determinant batches")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-lemma", help="run the determinant-sum and projection suites")
    p.add_argument("--n", type=int, help="number of players / coordinates")
    p.add_argument("--depth", type=int, help="subdivision depth (default 1)")
    p.add_argument("--trials", type=int, help="random labelings per suite (default 50)")
    p.add_argument("--seed", type=int, help="suite seed (default 0)")
    p.add_argument("--jobs", type=int, help="worker processes for determinant batches")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument(
        "--corrupt",
        action="store_true",
        help="negative control: break the point labeling and expect detection",
    )
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("verify-theorem", help="run the witness-existence suite")
    p.add_argument("--n", type=int, help="number of players / coordinates")
    p.add_argument("--depth", type=int, help="subdivision depth (default 1)")
    p.add_argument("--trials", type=int, help="random labelings (default 20)")
    p.add_argument("--seed", type=int, help="suite seed (default 0)")
    p.add_argument("--mode", choices=("det", "matching"), help="witness search mode")
    p.add_argument("--budget", type=int, help="simplex-count budget")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("subdivide", help="build a subdivision and report statistics")
    p.add_argument("--n", type=int, help="number of coordinates")
    p.add_argument("--depth", type=int, help="iterations (default 1)")
    p.add_argument("--budget", type=int, help="simplex-count budget")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("check-input", help="validate a problem document")
    p.add_argument("--input", help="problem document (JSON file, or - for stdin)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_check_input)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AssumptionViolationError, PreconditionError, InvariantViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except WitnessNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_WITNESS


if __name__ == "__main__":
    sys.exit(main())
