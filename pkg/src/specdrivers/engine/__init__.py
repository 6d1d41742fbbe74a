"""Suite execution, builtin suites, suite files and reports."""

from .catalog import ADT_KINDS, BUILTIN_SUITES, adt_suite_for, builtin_items, load_suite_file, parse_suite_text, resolve_suite
from .items import DriverSuiteItem, ProbeItem, RequirementItem, item_key, render_requirement
from .report import (
    FORMATS,
    HUMAN_TRACE_LIMIT,
    REPORT_SCHEMA,
    Report,
    ReportItem,
    deserialize_report,
    exit_status,
    serialize_report,
)
from .runner import SuiteConfig, item_seed, run_suite, select_items

__all__ = [
    "ADT_KINDS",
    "BUILTIN_SUITES",
    "adt_suite_for",
    "builtin_items",
    "load_suite_file",
    "parse_suite_text",
    "resolve_suite",
    "DriverSuiteItem",
    "ProbeItem",
    "RequirementItem",
    "item_key",
    "render_requirement",
    "FORMATS",
    "HUMAN_TRACE_LIMIT",
    "REPORT_SCHEMA",
    "Report",
    "ReportItem",
    "deserialize_report",
    "exit_status",
    "serialize_report",
    "SuiteConfig",
    "item_seed",
    "run_suite",
    "select_items",
]
