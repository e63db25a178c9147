"""Command line entry point: ``hkcalc run TASKFILE``.

Exit codes: 0 success, 2 input error, 3 timeout, 4 mathematical precondition
failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .cache import GBCache
from .deadline import TaskTimeout
from .errors import ExponentOverflow, InfiniteLength, ParseError, PreconditionError
from .runner import default_cache_dir, emit, error_document, run_task
from .taskfile import parse_taskfile, with_overrides

EXIT_OK, EXIT_INPUT, EXIT_TIMEOUT, EXIT_MATH = 0, 2, 3, 4


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("tolerance must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hkcalc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a task file")
    run.add_argument("file", type=Path)
    run.add_argument("--max-n", type=int, help="override n_max")
    run.add_argument("--tol", type=_fraction, help="override the numeric tolerance")
    run.add_argument("--format", choices=("json", "table"), default="json")
    run.add_argument("--cache", type=Path, help="GB cache directory (default: $HKCALC_CACHE_DIR "
                                                 "or ~/.cache/hkcalc)")
    run.add_argument("--no-cache", action="store_true", help="disable the GB cache")
    run.add_argument("--timeout", type=float, help="abandon the task after SECS seconds")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    spec = None
    try:
        spec = parse_taskfile(args.file.read_text(encoding="utf-8"))
        if args.max_n is not None and args.max_n < 1:
            raise ParseError("--max-n must be at least 1")
        spec = with_overrides(spec, n_max=args.max_n, tol=args.tol)
    except (OSError, UnicodeDecodeError, ParseError) as exc:
        print(emit(error_document(spec, "input", str(exc)), args.format))
        return EXIT_INPUT
    cache = None if args.no_cache else GBCache(args.cache or default_cache_dir())
    try:
        doc = run_task(spec, timeout=args.timeout, cache=cache)
    except TaskTimeout as exc:
        print(emit(error_document(spec, "timeout", str(exc)), args.format))
        return EXIT_TIMEOUT
    except ParseError as exc:
        print(emit(error_document(spec, "input", str(exc)), args.format))
        return EXIT_INPUT
    except (PreconditionError, InfiniteLength, ExponentOverflow) as exc:
        print(emit(error_document(spec, "precondition", str(exc)), args.format))
        return EXIT_MATH
    print(emit(doc, args.format), end="" if args.format == "table" else "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
