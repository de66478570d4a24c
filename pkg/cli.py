"""
Command-line entry point for the SNA(n) affgebra toolkit.

    python cli.py member "0,1;1,0" --n 1
    python cli.py bracket A00_1 A10_0
    python cli.py axioms --n 3 --samples 100 --seed 7 --suite all
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from config import settings
from controllers.verification_controller import SUITES, VerificationController
from models.errors import AffgebraError, MembershipError, ScalarParseError
from models.exactfield import as_scalar, scalar_parse
from models.exactmatrix import ExactMatrix, matrix_format
from utils.io_helpers import dump_json, load_matrix_arg, parse_scalar_list

logger = logging.getLogger(__name__)


def _is_literal(token: str) -> bool:
    """Scalar, comma-separated pattern or `;`-separated matrix text."""
    try:
        for part in token.replace(";", ",").split(","):
            scalar_parse(part)
    except ScalarParseError:
        return False
    return True


def shield_negative_literals(argv: Sequence[str]) -> list[str]:
    """Prefix a space to literals like `-w` or `-1/2,0,0` so argparse keeps them positional.

    Every literal parser strips surrounding whitespace.
    """
    return [
        f" {token}" if token.startswith("-") and not token.startswith("--") and _is_literal(token) else token
        for token in argv
    ]


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags are accepted before and after the command; values after it win."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--n", type=int, default=default(None), help="matrix size is n+1 (default: from input, else 2)")
    parser.add_argument("--field", choices=("q", "qw"), default=default(settings.FIELD), help="scalar field")
    parser.add_argument("--seed", type=int, default=default(settings.SEED), help="seed for sampled members")
    parser.add_argument("--samples", type=int, default=default(settings.SAMPLES), help="number of sampled members")
    parser.add_argument("--bound", type=int, default=default(settings.BOUND), help="height bound of sampled entries")
    parser.add_argument("--json", action="store_true", default=default(False), help="machine-readable output")
    parser.add_argument("--log-level", default=default(settings.LOG_LEVEL), help="logging level, e.g. INFO or DEBUG")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affgebra", description="Exact affine spaces, Lie affgebras and SNA(n).")
    _add_global_flags(parser, suppress=False)
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        _add_global_flags(sub, suppress=True)
        return sub

    sub = command("member", "decide membership in SNA(n)")
    sub.add_argument("matrix", help="matrix text, JSON, @file or generator name")

    sub = command("complete", "complete n^2-1 free entries to a member")
    sub.add_argument("pattern", nargs="?", default="", help="comma-separated free entries")

    sub = command("bracket", "[a, b] = ab - ba + b")
    sub.add_argument("a")
    sub.add_argument("b")

    command("table", "bracket table of the SNA(2) generators")

    sub = command("reduce", "[a, b]_o and its image in sl(n+1)_0")
    sub.add_argument("o")
    sub.add_argument("a")
    sub.add_argument("b")

    command("chevalley", "verify the Chevalley basis of L(SNA(2); A01_0)")

    sub = command("axioms", "run axiom suites on seeded members")
    sub.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sub.add_argument("--mutate", action="store_true", help="run the built-in mutated operation instead")

    sub = command("line-iso", "does the line map (lam, mu) carry the zeta1- to the zeta2-bracket")
    for name in ("zeta1", "zeta2", "lam", "mu"):
        sub.add_argument(name)

    return parser


# ---------------------------------------------------------------------------
# Commands; each returns an exit code
# ---------------------------------------------------------------------------

def _controller(args: argparse.Namespace, *matrices: ExactMatrix) -> VerificationController:
    n = args.n
    if n is None:
        # a 1x1 input still reaches the membership check, which reports its shape
        n = max(1, matrices[0].rows - 1) if matrices else 2
    return VerificationController(n=n, field=args.field, seed=args.seed, samples=args.samples, bound=args.bound)


def _matrices(args: argparse.Namespace, *names: str) -> list[ExactMatrix]:
    return [load_matrix_arg(getattr(args, name)) for name in names]


def cmd_member(args: argparse.Namespace) -> int:
    (m,) = _matrices(args, "matrix")
    report = _controller(args, m).member(m)
    if args.json:
        print(dump_json(report))
    else:
        print("member" if report.member else f"non-member: {report.violated}")
    return settings.EXIT_OK if report.member else settings.EXIT_DOMAIN_FAILURE


def cmd_complete(args: argparse.Namespace) -> int:
    controller = _controller(args)
    m, report = controller.complete(parse_scalar_list(args.pattern, controller.field))
    print(dump_json(report) if args.json else matrix_format(m))
    return settings.EXIT_OK


def cmd_bracket(args: argparse.Namespace) -> int:
    a, b = _matrices(args, "a", "b")
    result, report = _controller(args, a, b).bracket(a, b)
    if args.json:
        print(dump_json(report))
        return settings.EXIT_OK
    print(matrix_format(result))
    if report.coefficients is not None:
        print(f"coefficients: {','.join(report.coefficients)}")
    return settings.EXIT_OK


def _require_sna2(args: argparse.Namespace) -> None:
    if args.n not in (None, 2):
        raise ValueError(f"{args.command} is defined for n = 2 only, got --n {args.n}")


def cmd_table(args: argparse.Namespace) -> int:
    _require_sna2(args)
    controller = VerificationController(n=2, field=args.field)
    report = controller.table()
    if args.json:
        print(dump_json(report))
    else:
        for row in report.rows:
            print(controller.describe_table_row(row))
    return settings.EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    o, a, b = _matrices(args, "o", "a", "b")
    report = _controller(args, o, a, b).reduce(o, a, b)
    if args.json:
        print(dump_json(report))
    else:
        print(f"[a,b]_o = {_rows_text(report.reduced)}")
        print(f"[a,b]_o - o = {_rows_text(report.vector)}")
        print(f"(a-o)(b-o) - (b-o)(a-o) = {_rows_text(report.commutator)}")
        print(f"intertwines: {'yes' if report.intertwines else 'no'}")
    return settings.EXIT_OK if report.intertwines and report.in_sl0 else settings.EXIT_DOMAIN_FAILURE


def cmd_chevalley(args: argparse.Namespace) -> int:
    _require_sna2(args)
    report = VerificationController(n=2, field="qw").chevalley()
    if args.json:
        print(dump_json(report))
    else:
        print(f"basepoint: {report.basepoint}")
        for name in ("e", "f", "h"):
            print(f"{name} = {_rows_text(getattr(report, name))}")
        for check in report.relations:
            print(f"{check.relation}: {'verified' if check.holds else 'FAILED'}")
    return settings.EXIT_OK if report.passed else settings.EXIT_DOMAIN_FAILURE


def cmd_axioms(args: argparse.Namespace) -> int:
    controller = _controller(args)
    report = controller.axioms(args.suite, args.mutate)
    if args.json:
        print(dump_json(report))
    else:
        print(f"seed: {report.seed}")
        print(f"SNA({report.n}) over {controller.field.label}, {report.samples} samples"
              f"{' (mutated)' if report.mutated else ''}")
        for suite in report.suites:
            if suite.passed:
                print(f"{suite.suite}: pass ({suite.checked} checked)")
            else:
                print(f"{suite.suite}: FAIL {suite.identity}")
                print(json.dumps(suite.model_dump(), sort_keys=True, indent=2))
    return settings.EXIT_OK if report.passed else settings.EXIT_DOMAIN_FAILURE


def cmd_line_iso(args: argparse.Namespace) -> int:
    values = [as_scalar(getattr(args, name)) for name in ("zeta1", "zeta2", "lam", "mu")]
    report = _controller(args).line_iso(*values)
    if args.json:
        print(dump_json(report))
    else:
        print("preserved" if report.preserved else "not preserved")
    return settings.EXIT_OK if report.preserved else settings.EXIT_DOMAIN_FAILURE


def _rows_text(rows: list[list[str]]) -> str:
    return ";".join(",".join(row) for row in rows)


COMMANDS = {
    "member": cmd_member,
    "complete": cmd_complete,
    "bracket": cmd_bracket,
    "table": cmd_table,
    "reduce": cmd_reduce,
    "chevalley": cmd_chevalley,
    "axioms": cmd_axioms,
    "line-iso": cmd_line_iso,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(shield_negative_literals(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return settings.EXIT_OK if exc.code in (0, None) else settings.EXIT_USAGE

    try:
        settings.configure_logging(args.log_level)
    except ValueError:
        print(f"error: unknown log level {args.log_level!r}", file=sys.stderr)
        return settings.EXIT_USAGE

    if args.n is not None and args.n < 1 or args.samples < 1 or args.bound < 1:
        print("error: --n, --samples and --bound must be >= 1", file=sys.stderr)
        return settings.EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except MembershipError as exc:
        print(f"non-member: {exc.constraint or exc}", file=sys.stderr)
        return settings.EXIT_DOMAIN_FAILURE
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return settings.EXIT_USAGE
    except AffgebraError as exc:
        logger.error("%s failed: %s", args.command, exc)
        return settings.EXIT_DOMAIN_FAILURE


if __name__ == "__main__":
    sys.exit(main())
