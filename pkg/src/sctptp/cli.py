"""Command line front end: ``sctptp check|elab|coq|fmt``.

Exit status is 0 on success (or a valid proof), 1 for an invalid proof and 2
for operational errors such as unreadable files or syntax errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .checker import check_proof
from .coq import CheckFailed, UnsupportedStep, coq_ident, emit_prelude, export_coq
from .elaborate import InvalidInput, eliminate_level2
from .logic import ArityConflict
from .syntax import ParseError, parse_derivation, print_derivation

log = logging.getLogger("sctptp")

EXIT_OK, EXIT_INVALID, EXIT_ERROR = 0, 1, 2


class _Fail(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        super().__init__(message)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise _Fail(EXIT_ERROR, f"cannot read {path}: {e}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise _Fail(EXIT_ERROR, f"cannot write {path}: {e}") from None


def _parse(path: str):
    text = _read(path)
    try:
        return parse_derivation(text)
    except ParseError as e:
        raise _Fail(EXIT_ERROR, f"{path}: {e}") from None


def cmd_check(args) -> int:
    d = _parse(args.input)
    report = check_proof(d, level_limit=args.level)
    _write(args.output, report.porcelain() if args.porcelain else report.text())
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_elab(args) -> int:
    d = _parse(args.input)
    try:
        result = eliminate_level2(d)
    except InvalidInput as e:
        print(f"{args.input}: {e}", file=sys.stderr)
        return EXIT_INVALID
    for name, replacement in result.step_map.items():
        log.info("%s -> %s", name, ", ".join(replacement))
    if result.stats.get("nnf_steps"):
        print("NNF steps kept: " + ", ".join(result.stats["nnf_steps"]), file=sys.stderr)
    _write(args.output, print_derivation(result.derivation))
    return EXIT_OK


def cmd_coq(args) -> int:
    d = _parse(args.input)
    stem = "sctptp_proof" if args.input == "-" else Path(args.input).stem
    try:
        script = export_coq(d, coq_ident(stem))
    except ArityConflict as e:
        raise _Fail(EXIT_ERROR, f"{args.input}: {e}") from None
    except (CheckFailed, UnsupportedStep) as e:
        print(f"{args.input}: {e}", file=sys.stderr)
        return EXIT_INVALID
    if args.output and Path(args.output).is_dir():
        out_dir = Path(args.output)
        _write(str(out_dir / f"{script.name}.v"), script.render())
        if args.emit_prelude:
            _write(str(out_dir / "SCTPTP.v"), emit_prelude())
        return EXIT_OK
    _write(args.output, script.render())
    if args.emit_prelude:
        target = Path(args.output).parent if args.output and args.output != "-" else Path(".")
        _write(str(target / "SCTPTP.v"), emit_prelude())
    return EXIT_OK


def cmd_fmt(args) -> int:
    d = _parse(args.input)
    _write(args.output, print_derivation(d))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sctptp", description="SC-TPTP proof toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="derivation file, or - for stdin")
        p.add_argument("-o", "--output", help="output path (default: stdout)")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "verify every step of a derivation")
    p.add_argument("--level", type=int, choices=(1, 2), default=2, help="highest rule level allowed")
    p.add_argument("--porcelain", action="store_true", help="line-oriented machine output")
    add("elab", cmd_elab, "eliminate congruence and SubstMulti steps")
    p = add("coq", cmd_coq, "export a level 1 derivation to Coq")
    p.add_argument("--emit-prelude", action="store_true", help="also write SCTPTP.v")
    add("fmt", cmd_fmt, "print a derivation in canonical form")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except _Fail as e:
        print(f"sctptp: {e}", file=sys.stderr)
        return e.status
    except ArityConflict as e:
        print(f"sctptp: {e}", file=sys.stderr)
        return EXIT_ERROR
    except RecursionError:
        print("sctptp: input nests too deeply", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
