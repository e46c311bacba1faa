"""Command line entry point.

Exit codes: 0 success, 1 validation error (e.g. a configuration that cannot
be contracted), 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .lattice import LatticeError
from .report import FORMATS, analyze, emit
from .scenario import BUILTINS, ParseError, UnknownBuiltin, builtin_scenario, load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2


def run_scenario(path):
    return analyze(load_scenario(path))


def run_builtin(name: str, e: int | None = None):
    return analyze(builtin_scenario(name, e))


def _output_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _output_options()
    parser = argparse.ArgumentParser(
        prog="nefsurf",
        description="Exact intersection numbers, singularity data and anticanonical "
        "positivity for contracted surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="analyze a scenario file")
    p.add_argument("file", type=Path)
    p = sub.add_parser("builtin", parents=[common], help="analyze a built-in scenario")
    p.add_argument("name", choices=BUILTINS)
    p.add_argument("--e", type=int, default=None, help="C0^2 = -e for example-a (default 2)")
    sub.add_parser("list-builtins", help="list built-in scenario names")
    return parser


def _write(data: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out.write_bytes(data)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-builtins":
        print("\n".join(BUILTINS))
        return EXIT_OK
    try:
        if args.command == "analyze":
            report = run_scenario(args.file)
        else:
            report = run_builtin(args.name, args.e)
    except (ParseError, UnknownBuiltin) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (LatticeError, ValueError) as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        submatrix = getattr(exc, "submatrix", None)
        if submatrix is not None:
            for row in submatrix:
                print("  " + " ".join(f"{str(x):>5}" for x in row), file=sys.stderr)
        return EXIT_VALIDATION
    _write(emit(report, args.format), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
