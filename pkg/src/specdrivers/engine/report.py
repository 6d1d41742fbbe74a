"""Run reports and their json / markdown / plain serializations."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from ..kernel import Outcome

__all__ = [
    "FORMATS",
    "HUMAN_TRACE_LIMIT",
    "ReportItem",
    "Report",
    "serialize_report",
    "deserialize_report",
    "exit_status",
    "REPORT_SCHEMA",
]

FORMATS = ("json", "markdown", "plain")
HUMAN_TRACE_LIMIT = 50
FORMAT_VERSION = 1

_TOTAL_KEYS = ("holds", "violated", "bound_exhausted", "precondition_unmet")


@dataclass
class ReportItem:
    name: str
    group: str
    template: str
    verdict: str
    message: str
    witness: dict | None
    rendering: str
    millis: float | None = None
    details: dict = field(default_factory=dict)


@dataclass
class Report:
    suite: str
    seed: int
    time_boundary: int | None
    items: list
    totals: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if not self.totals:
            self.totals = tally(self.items)

    @property
    def status(self) -> int:
        return exit_status(self.items)

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "suite": self.suite,
            "seed": self.seed,
            "time_boundary": self.time_boundary,
            "status": self.status,
            "totals": dict(self.totals),
            "items": [asdict(i) for i in self.items],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(
            suite=data["suite"],
            seed=data["seed"],
            time_boundary=data["time_boundary"],
            items=[ReportItem(**i) for i in data["items"]],
            totals=dict(data["totals"]),
            format_version=data.get("format_version", FORMAT_VERSION),
        )


def tally(items) -> dict:
    totals = {k: 0 for k in _TOTAL_KEYS}
    for i in items:
        totals[i.verdict] += 1
    return totals


def exit_status(items) -> int:
    """0 when nothing failed, 2 when some liveness stayed undecided, 1 on any violation."""
    verdicts = {i.verdict for i in items}
    if Outcome.VIOLATED.value in verdicts:
        return 1
    if Outcome.BOUND_EXHAUSTED.value in verdicts:
        return 2
    return 0


def deserialize_report(data: bytes | str) -> Report:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return Report.from_dict(json.loads(data))


def _trace_rows(witness: dict, limit: int):
    trace = witness["trace"]
    conds = trace["conditions"]
    rows = trace["steps"][:limit]
    return conds, rows, trace["length"]


def _witness_lines(witness: dict | None, limit: int, markdown: bool) -> list:
    if not witness:
        return []
    out = []
    if "inputs" in witness:
        out.append("Witness inputs:" if not markdown else "**Witness inputs:**")
        for k, v in witness["inputs"].items():
            out.append(f"  {k} = {v}" if not markdown else f"- `{k}` = `{v}`")
    if "trace" in witness:
        conds, rows, length = _trace_rows(witness, limit)
        step = witness.get("step")
        head = f"Witness trace ({length} steps, offending step {step})"
        out.append(head + ":" if not markdown else f"**{head}:**")
        if markdown:
            out.append("")
            out.append("| step | " + " | ".join(conds) + " |")
            out.append("|---|" + "---|" * len(conds))
            for i, row in enumerate(rows):
                cells = " | ".join("T" if b else "." for b in row)
                out.append(f"| {i} | {cells} |")
        else:
            out.append("  step  " + " ".join(conds))
            for i, row in enumerate(rows):
                out.append(f"  {i:>4}  " + " ".join(("T" if b else ".").ljust(len(c)) for b, c in zip(row, conds)))
        if length > limit:
            out.append(f"  ... {length - limit} more steps (full trace in the json report)")
    return out


def _markdown(rep: Report) -> str:
    lines = [f"# Verification report: {rep.suite}", ""]
    lines.append(f"- seed: {rep.seed}")
    lines.append(f"- time boundary: {rep.time_boundary if rep.time_boundary is not None else 'per requirement'}")
    lines.append("- totals: " + ", ".join(f"{k} {v}" for k, v in rep.totals.items()))
    lines.append(f"- status: {rep.status}")
    for item in rep.items:
        lines += ["", f"## {item.group + '/' if item.group else ''}{item.name}", ""]
        lines.append(f"- template: `{item.template}`")
        lines.append(f"- verdict: **{item.verdict}**")
        lines.append(f"- requirement: {item.rendering}")
        lines.append(f"- message: {item.message}")
        if item.millis is not None:
            lines.append(f"- millis: {item.millis}")
        for row in item.details.get("drivers", []):
            lines.append(f"  - `{row['driver']}`: {row['verdict']}")
        w = _witness_lines(item.witness, HUMAN_TRACE_LIMIT, True)
        if w:
            lines.append("")
            lines += w
    return "\n".join(lines) + "\n"


def _plain(rep: Report) -> str:
    lines = [f"suite {rep.suite} (seed {rep.seed})"]
    for item in rep.items:
        key = f"{item.group}/{item.name}" if item.group else item.name
        timing = f" [{item.millis} ms]" if item.millis is not None else ""
        lines.append(f"{item.verdict.upper():<18} {key}{timing}")
        lines.append(f"    {item.rendering}")
        if item.verdict != Outcome.HOLDS.value:
            lines.append(f"    {item.message}")
        lines += ["  " + w for w in _witness_lines(item.witness, HUMAN_TRACE_LIMIT, False)]
    lines.append("totals: " + ", ".join(f"{k}={v}" for k, v in rep.totals.items()) + f"; status {rep.status}")
    return "\n".join(lines) + "\n"


def serialize_report(rep: Report, fmt: str = "json") -> bytes:
    """Byte-stable rendering; json keeps full witnesses, human formats cut traces at 50 steps."""
    if fmt == "json":
        text = json.dumps(rep.to_dict(), indent=2, ensure_ascii=False) + "\n"
    elif fmt == "markdown":
        text = _markdown(rep)
    elif fmt == "plain":
        text = _plain(rep)
    else:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {FORMATS}")
    return text.encode("utf-8")


REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "specdrivers verification report",
    "type": "object",
    "required": ["format_version", "suite", "seed", "time_boundary", "status", "totals", "items"],
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "suite": {"type": "string"},
        "seed": {"type": "integer"},
        "time_boundary": {"type": ["integer", "null"]},
        "status": {"enum": [0, 1, 2]},
        "totals": {
            "type": "object",
            "required": list(_TOTAL_KEYS),
            "properties": {k: {"type": "integer", "minimum": 0} for k in _TOTAL_KEYS},
        },
        "items": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "template", "verdict", "witness", "rendering", "millis"],
                "properties": {
                    "name": {"type": "string"},
                    "group": {"type": "string"},
                    "template": {"type": "string"},
                    "verdict": {"enum": [o.value for o in Outcome]},
                    "message": {"type": "string"},
                    "witness": {
                        "type": ["object", "null"],
                        "properties": {
                            "trace": {
                                "type": "object",
                                "required": ["conditions", "steps", "length"],
                            },
                            "step": {"type": ["integer", "null"]},
                            "inputs": {"type": "object"},
                        },
                    },
                    "rendering": {"type": "string"},
                    "millis": {"type": ["number", "null"]},
                    "details": {"type": "object"},
                },
            },
        },
    },
}
