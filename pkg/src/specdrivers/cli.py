"""Command-line front end.

Exit status: 0 when every item holds (or its precondition was never met),
1 on any violation, 2 when some liveness check hit its bound without a
violation, 3 on a configuration or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .adt.drivers import DEFAULT_SAMPLES
from .engine import BUILTIN_SUITES, FORMATS, REPORT_SCHEMA, SuiteConfig, resolve_suite, run_suite, select_items
from .engine.report import serialize_report
from .errors import SpecDriverError
from .examples import fixture_names
from .temporal.templates import template_catalog

__all__ = ["main", "main_exit", "build_parser", "CONFIG_ERROR"]

CONFIG_ERROR = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports problems with status 3 instead of 2."""

    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specdrivers", description="Check temporal requirements and ADT axioms by bounded execution.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ls = sub.add_parser("list", help="list templates, fixtures and builtin suites")
    ls.add_argument("what", nargs="?", choices=("templates", "fixtures", "suites", "all"), default="all")

    def suite_flags(p, with_run_flags):
        p.add_argument("--suite", required=True, help="builtin:NAME or path to a suite file")
        p.add_argument("--time-boundary", type=_positive, default=None, help="override every requirement bound")
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--filter", default=None, metavar="GLOB", help="only items whose group/name or name match")
        if with_run_flags:
            p.add_argument("--format", choices=FORMATS, default="json")
            p.add_argument("--jobs", type=_positive, default=1)
            p.add_argument("--samples", type=_positive, default=DEFAULT_SAMPLES, help="inputs per ADT driver")
            p.add_argument("--timings", action="store_true", help="record per-item wall time (breaks byte stability)")

    suite_flags(sub.add_parser("verify", help="run a suite and print a report"), True)
    suite_flags(sub.add_parser("render", help="print the natural-language form of every item"), False)
    sub.add_parser("report-schema", help="print the JSON schema of verify reports")
    return parser


def _list(what: str, out) -> None:
    if what in ("templates", "all"):
        out.write("templates:\n")
        for tid, t in template_catalog().items():
            slots = ", ".join(f"{s.name}:{s.kind}" for s in t.slots)
            out.write(f"  {tid:<32} [{slots}]  {t.text_skeleton}\n")
    if what in ("fixtures", "all"):
        out.write("fixtures:\n")
        for name in fixture_names():
            out.write(f"  {name}\n")
    if what in ("suites", "all"):
        out.write("builtin suites:\n")
        for name in list(BUILTIN_SUITES) + ["all"]:
            out.write(f"  builtin:{name}\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        stderr.write(str(exc))
        return CONFIG_ERROR
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    if args.command == "list":
        _list(args.what, stdout)
        return 0
    if args.command == "report-schema":
        stdout.write(json.dumps(REPORT_SCHEMA, indent=2) + "\n")
        return 0

    try:
        name, items = resolve_suite(args.suite, args.seed)
        items = select_items(items, args.filter)
        if args.command == "render":
            for item in items:
                stdout.write(item.rendering(args.time_boundary) + "\n")
            return 0
        cfg = SuiteConfig(
            items=items,
            time_boundary=args.time_boundary,
            seed=args.seed,
            jobs=args.jobs,
            format=args.format,
            samples=args.samples,
            timings=args.timings,
            name=name,
        )
        report = run_suite(cfg)
    except SpecDriverError as exc:
        stderr.write(f"specdrivers: error: {exc}\n")
        return CONFIG_ERROR
    data = serialize_report(report, args.format)
    buf = getattr(stdout, "buffer", None)
    if buf is not None:
        buf.write(data)
        buf.flush()
    else:
        stdout.write(data.decode("utf-8"))
    return report.status


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
