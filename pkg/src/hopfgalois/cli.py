"""Command-line front end.

    hopfgalois paper-example [--format text|json]
    hopfgalois discover --group "<cycles;...>" --subgroup "<cycles;...>" [--format ...]
    hopfgalois hamiltonian [--format ...]

Exit codes: 0 success, 2 a check failed, 3 bad input.
"""
from __future__ import annotations

import argparse
import sys

from .report import InputError, run_discover, run_hamiltonian, run_paper_example

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which here means a failed check
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfgalois", description="Hopf-Galois structures on separable extensions")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("paper-example", parents=[fmt], help="reproduce the degree-8 S4 example")
    d = sub.add_parser("discover", parents=[fmt], help="run the pipeline on a group and subgroup")
    d.add_argument("--group", required=True, help="generators in cycle notation, ';'-separated")
    d.add_argument("--subgroup", default="", help="generators of G' ('' for the trivial group)")
    sub.add_parser("hamiltonian", parents=[fmt], help="λ(Q8) versus ρ(Q8)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "paper-example":
            report = run_paper_example()
        elif args.command == "discover":
            report = run_discover(args.group, args.subgroup)
        else:
            report = run_hamiltonian()
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    failure = report.first_failure()
    if failure:
        print(f"check failed: {failure['name']} {failure['detail']}".rstrip(), file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
