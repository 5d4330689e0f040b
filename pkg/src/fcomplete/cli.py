"""Command line entry point.

Exit status: 0 Complete, 1 Incomplete, 2 Inconclusive (check, compare,
oracle, closure); for survey, regression, family and modops 0 means success.
Errors use the sysexits range: 64 usage, 65 bad input data, 66 unreadable
input, 70 internal inconsistency (engine/oracle split, failed audit).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from . import report as rpt
from .closure import Budget, Status
from .errors import CapExceededError, CompletenessError, DomainNotBooleanError
from .families import FamilySpec, build_family, lemma_regression
from .opfile import parse_operator_file, render_operator_file
from .tables import Domain, OperatorSet

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_SOFTWARE = 70

STATUS_EXIT = {Status.COMPLETE: 0, Status.INCOMPLETE: 1, Status.INCONCLUSIVE: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as Inconclusive
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _add_budget(p: argparse.ArgumentParser) -> None:
    defaults = Budget()
    p.add_argument("--budget-tables", type=int, default=defaults.max_tables, metavar="N",
                   help="cap on distinct binary tables reached (default %(default)s)")
    p.add_argument("--budget-iters", type=int, default=defaults.max_iterations, metavar="N",
                   help="cap on breadth-first depths (default %(default)s)")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "machine"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fcomplete", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide completeness of an operator file")
    p.add_argument("file")
    p.add_argument("--audit", action="store_true", help="re-verify the verdict independently")
    _add_budget(p)
    _add_format(p)

    p = sub.add_parser("oracle", help="Post's five-class criterion (m = 2)")
    p.add_argument("file")
    _add_format(p)

    p = sub.add_parser("compare", help="run engine and oracle, report agreement (m = 2)")
    p.add_argument("file")
    _add_budget(p)
    _add_format(p)

    p = sub.add_parser("closure", help="list the binary closure with witnesses")
    p.add_argument("file")
    _add_budget(p)
    _add_format(p)

    p = sub.add_parser("family", help="emit an operator file for a family instance")
    p.add_argument("--family", required=True, help="r1 .. r7")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stars", default="", help="comma-separated or/and selections")
    p.add_argument("--lozenges", default="", help="comma-separated neg/negneg selections")
    p.add_argument("--m", type=int, default=2)

    p = sub.add_parser("survey", help="engine vs oracle over all small sets (m = 2)")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--audit", action="store_true")
    _add_budget(p)
    _add_format(p)

    p = sub.add_parser("modops", help="enumerate modification operators")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--order", choices=("geq", "leq"), default="geq")
    _add_format(p)

    p = sub.add_parser("regression", help="three-way regression report over the R1..R7 families")
    _add_budget(p)
    _add_format(p)
    return parser


def _budget(args) -> Budget:
    try:
        return Budget(args.budget_tables, args.budget_iters)
    except CompletenessError as exc:
        raise UsageError(str(exc)) from None


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _split(flag: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in flag.split(",") if s.strip())


def _require_boolean(opset: OperatorSet) -> None:
    if opset.domain.m != 2:
        raise DomainNotBooleanError(f"this command needs m = 2, file declares m = {opset.domain.m}")


def _emit(doc: dict, fmt: str) -> None:
    print(rpt.dump_machine(doc) if fmt == "machine" else rpt.dump_text(doc))


def run(args) -> int:
    start = time.perf_counter()
    cmd = args.command

    if cmd == "family":
        try:
            spec = FamilySpec(args.family, args.n, _split(args.stars), _split(args.lozenges))
            domain = Domain(args.m)
        except CompletenessError as exc:
            raise UsageError(str(exc)) from None
        table = build_family(spec, domain)
        print(render_operator_file(OperatorSet(domain, {spec.family: table}), header=spec.label), end="")
        return 0

    if cmd == "modops":
        try:
            body = rpt.modops_body(args.m, args.order)
        except (CapExceededError, CompletenessError) as exc:
            raise UsageError(str(exc)) from None
        digest = rpt.digest_args({"m": args.m, "order": args.order})
        _emit(rpt.envelope(cmd, digest, body, time.perf_counter() - start), args.format)
        return 0

    if cmd == "survey":
        try:
            body, ok = rpt.survey_body(args.m, args.max_size, _budget(args), args.audit)
        except CapExceededError as exc:
            raise UsageError(str(exc)) from None
        digest = rpt.digest_args({"m": args.m, "max_size": args.max_size})
        _emit(rpt.envelope(cmd, digest, body, time.perf_counter() - start), args.format)
        return 0 if ok else EX_SOFTWARE

    if cmd == "regression":
        budget = _budget(args)
        regression = lemma_regression(budget)
        body = rpt.regression_body(regression, budget)
        _emit(rpt.envelope(cmd, rpt.digest_args({}), body, time.perf_counter() - start), args.format)
        return 0 if regression.ok else EX_SOFTWARE

    text = _read(args.file)
    opset = parse_operator_file(text)
    digest = rpt.digest_text(text)

    if cmd == "check":
        body, verdict = rpt.check_body(opset, _budget(args), args.audit)
        _emit(rpt.envelope(cmd, digest, body, time.perf_counter() - start), args.format)
        if body.get("audit") == "FAILED":
            return EX_SOFTWARE
        return STATUS_EXIT[verdict.status]

    if cmd == "oracle":
        _require_boolean(opset)
        body = rpt.oracle_body(opset)
        _emit(rpt.envelope(cmd, digest, body, time.perf_counter() - start), args.format)
        return 0 if body["oracle"]["status"] == Status.COMPLETE.value else 1

    if cmd == "compare":
        _require_boolean(opset)
        body, verdict, agreement = rpt.compare_body(opset, _budget(args))
        _emit(rpt.envelope(cmd, digest, body, time.perf_counter() - start), args.format)
        return STATUS_EXIT[verdict.status] if agreement else EX_SOFTWARE

    if cmd == "closure":
        body, closure = rpt.closure_body(opset, _budget(args))
        _emit(rpt.envelope(cmd, digest, body, time.perf_counter() - start), args.format)
        return 0 if closure.exhausted else 2

    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except UsageError as exc:
        print(f"fcomplete: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"fcomplete: cannot read input: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except CompletenessError as exc:
        print(f"fcomplete: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
