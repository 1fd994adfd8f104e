#!/usr/bin/env python3
"""
Command-line front end for fusion2s

Exit codes: 0 success/PASS, 1 FAIL or internal error, 2 input error,
3 capability or size error. Reports go to standard output, diagnostics
to standard error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from fusion2s import __version__
from fusion2s.generators.report_generator import OutputFormat, ReportGenerator
from fusion2s.infrastructure.category_service import CategoryService, scan_record_documents, scan_summary_document
from fusion2s.infrastructure.errors import Fusion2SError, InputError
from fusion2s.infrastructure.groups import parse_orders
from fusion2s.infrastructure.smatrix import Verdict
from fusion2s.models.documents import CategorySpec

logger = logging.getLogger(__name__)


def _read_spec(path: str) -> CategorySpec:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    return CategorySpec.parse_document(text)


def _output_options(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """--format and -v; subcommand copies leave the global value alone unless given"""
    parser.add_argument("--format", choices=[f.value for f in OutputFormat],
                        default=argparse.SUPPRESS if suppress else OutputFormat.TABLE.value,
                        help="Output format (default: table)")
    parser.add_argument("--verbose", "-v", action="store_true",
                        default=argparse.SUPPRESS if suppress else False, help="Debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusion2s",
        description="2-categorical S-matrices of pointed braided fusion categories",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _output_options(parser)
    common = argparse.ArgumentParser(add_help=False)
    _output_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("validate", "Validate a category document and print it normalized"),
        ("muger", "Muger center and its Tannakian type"),
        ("classify", "Schur classes of braided module categories"),
    ]:
        cmd = sub.add_parser(name, help=help_text, parents=[common])
        cmd.add_argument("input", help="Category document (JSON), or - for stdin")

    stmatrix = sub.add_parser("stmatrix", help="The 2-categorical S-matrix", parents=[common])
    stmatrix.add_argument("input", help="Category document (JSON), or - for stdin")
    stmatrix.add_argument("--via-center", action="store_true", help="Compute through the Drinfeld center")

    chartable = sub.add_parser("chartable", help="Character table of Z_n1 x ... x Z_nk", parents=[common])
    chartable.add_argument("orders", help="Cyclic factor orders separated by commas or x, e.g. 2,2 or 2x2")

    verify = sub.add_parser(
        "verify", help="Certify that S-tilde is the character table of the Muger center", parents=[common]
    )
    verify.add_argument("input", help="Category document (JSON), or - for stdin")
    verify.add_argument("--with-oracle", action="store_true", help="Also compare against the Drinfeld-center path")

    scan = sub.add_parser(
        "scan", help="Verify every quadratic form on every abelian group up to a size", parents=[common]
    )
    scan.add_argument("--max-size", type=int, required=True, help="Largest group order")
    scan.add_argument("--output", help="Write one JSON line per instance to this file")
    scan.add_argument("--with-oracle", action="store_true", help="Add the Drinfeld-center path where available")
    scan.add_argument("--workers", type=int, default=None, help="Worker processes (default from settings)")
    return parser


def run(args: argparse.Namespace, service: Optional[CategoryService] = None) -> int:
    """Execute a parsed command and return its exit code"""
    service = service or CategoryService()
    generator = ReportGenerator()
    output_format = OutputFormat(args.format)

    if args.command == "validate":
        document = service.validate(_read_spec(args.input))
    elif args.command == "muger":
        document = service.muger(_read_spec(args.input))
    elif args.command == "classify":
        document = service.classify(_read_spec(args.input))
    elif args.command == "stmatrix":
        document = service.st_matrix(_read_spec(args.input), via_center=args.via_center)
    elif args.command == "chartable":
        document = service.character_table(parse_orders(args.orders))
    elif args.command == "verify":
        document = service.verify(_read_spec(args.input), with_oracle=args.with_oracle)
        sys.stdout.write(generator.generate(document, output_format))
        return 0 if document.verdict == Verdict.PASS else 1
    elif args.command == "scan":
        if args.max_size < 1:
            raise InputError("--max-size must be at least 1")
        summary = service.scan(args.max_size, with_oracle=args.with_oracle, workers=args.workers)
        records = scan_record_documents(summary)
        if args.output:
            try:
                with open(args.output, "w") as handle:
                    for record in records:
                        handle.write(record.model_dump_json() + "\n")
            except OSError as e:
                raise InputError(f"Cannot write {args.output}: {e}") from e
        for record in records:
            if record.verdict != Verdict.PASS:
                logger.error(f"FAIL: {record.spec.model_dump_json()} {record.error or ''}")
        sys.stdout.write(generator.generate(scan_summary_document(summary), output_format))
        return 0 if summary.passed else 1
    else:
        raise InputError(f"Unknown command {args.command}")

    sys.stdout.write(generator.generate(document, output_format))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return run(args)
    except Fusion2SError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
