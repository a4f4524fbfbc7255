"""Command-line driver.

    mtinv compute FILE [--modulus N] [--format text|json]
    mtinv verify FILE [--modulus N]     fixed-point exactness checks only
    mtinv oracle FILE                   brute-force H0/H1 in place of Smith form
    mtinv corpus                        every shipped example

Exit status: 0 when every check passes, 1 on a cross-check or exactness
failure, 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import shipped_paths
from .errors import ParseError, SchemaError, ValidationError
from .invariants import DEFAULT
from .problem import ProblemFile, parse_problem
from .report import render_json, render_text
from .runner import ORACLE, exit_status, run_problem, run_verification


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("modulus must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modulus", type=_positive, help="override the modulus of every task that takes one")
    common.add_argument("--format", choices=("text", "json"), default="text")
    p = argparse.ArgumentParser(prog="mtinv", description="Degree-one invariants of groups of multiplicative type.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("compute", "run the tasks in a problem file"),
        ("verify", "run exactness checks for every module in a problem file"),
        ("oracle", "run the tasks with brute-force cohomology"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("file", type=Path)
    sub.add_parser("corpus", parents=[common], help="run every shipped example")
    return p


def _load(path: Path) -> ProblemFile:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_problem(data)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    sections = []
    try:
        if args.command == "corpus":
            for path in shipped_paths():
                sections.append((path.name, run_problem(_load(path), args.modulus)))
        else:
            problem = _load(args.file)
            if args.command == "verify":
                results = run_verification(problem, args.modulus)
            else:
                backend = ORACLE if args.command == "oracle" else DEFAULT
                results = run_problem(problem, args.modulus, backend)
            sections.append((None, results))
    except (ParseError, SchemaError, ValidationError) as exc:
        print(f"mtinv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(render_json(sections))
    else:
        sys.stdout.write("".join(render_text(res, title) for title, res in sections))
    return max((exit_status(res) for _, res in sections), default=0)


if __name__ == "__main__":
    sys.exit(main())
