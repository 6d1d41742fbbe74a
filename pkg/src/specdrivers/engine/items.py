"""Units of work a suite is made of.

Every item has a ``name``, a ``group`` (the suite or file it came from), a
``template`` label for reports, a ``rendering`` and an ``execute`` method that
returns a verdict plus JSON-friendly details.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Any, Callable

from ..adt.drivers import DriverSuite, check_driver
from ..kernel import Outcome, StateRef, Verdict
from ..temporal.ltl import pretty
from ..temporal.templates import (
    DEFAULT_TIME_BOUNDARY,
    PATTERN_FAMILY,
    TemporalRequirement,
    check_requirement,
    requirement_formula,
)

__all__ = [
    "RequirementItem",
    "DriverSuiteItem",
    "ProbeItem",
    "render_requirement",
    "item_key",
]


def item_key(item) -> str:
    return f"{item.group}/{item.name}" if item.group else item.name


def _boundary_text(bound: int) -> str:
    if bound >= DEFAULT_TIME_BOUNDARY:
        return f"time boundary: platform maximum ({sys.maxsize})"
    return f"time boundary: {bound} steps"


def render_requirement(r: TemporalRequirement, time_boundary: int | None = None) -> str:
    """Natural-language form of ``r``: name, model, filled skeleton, time boundary."""
    text = r.template.text_skeleton
    for slot in r.template.slot_names:
        text = text.replace("{" + slot + "}", r.bindings[slot])
    bound = r.time_boundary if time_boundary is None else time_boundary
    return f"{r.name} [{r.model.name}]: {text}. ({_boundary_text(bound)})"


@dataclass(frozen=True, eq=False)
class RequirementItem:
    requirement: TemporalRequirement
    group: str = ""
    initial: Callable[[int], Any] | None = None  # seed -> state value

    @property
    def name(self) -> str:
        return self.requirement.name

    @property
    def template(self) -> str:
        t = self.requirement.template
        if t.pattern.k is not None and t.family == PATTERN_FAMILY:
            return f"{t.id}({t.pattern.k})"
        return t.id

    def problems(self, time_boundary: int | None) -> list:
        r = self.requirement
        bound = r.time_boundary if time_boundary is None else time_boundary
        if r.template.family == PATTERN_FAMILY and bound >= DEFAULT_TIME_BOUNDARY:
            return [f"{item_key(self)}: pattern requirements need a finite time boundary (set bound or --time-boundary)"]
        if bound < 1:
            return [f"{item_key(self)}: time boundary must be >= 1"]
        return []

    def rendering(self, time_boundary: int | None = None) -> str:
        return render_requirement(self.requirement, time_boundary)

    def execute(self, seed: int, time_boundary: int | None, samples: int):
        r = self.requirement
        value = self.initial(seed) if self.initial is not None else r.model.init(seed)
        verdict = check_requirement(r, StateRef(r.model, value), time_boundary)
        details: dict = {}
        if r.template.family == PATTERN_FAMILY:
            details["formula"] = pretty(requirement_formula(r))
        if verdict.iterations is not None:
            details["iterations"] = verdict.iterations
        for key in ("variant", "vacuous"):
            if key in verdict.details:
                details[key] = verdict.details[key]
        return verdict, details


@dataclass(frozen=True, eq=False)
class DriverSuiteItem:
    """All drivers of one suite; the item verdict is the most severe driver verdict."""

    suite: DriverSuite
    group: str = ""
    label: str | None = None
    samples: int | None = None
    fail_fast: bool = False

    @property
    def name(self) -> str:
        return self.label or self.suite.adt_name

    @property
    def template(self) -> str:
        return f"ADT:{self.suite.adt_name}"

    def problems(self, time_boundary: int | None) -> list:
        return []

    def rendering(self, time_boundary: int | None = None) -> str:
        names = ", ".join(d.name for d in self.suite.drivers)
        return f"{self.name} [{self.suite.adt_name}]: {len(self.suite.drivers)} specification drivers ({names})"

    def execute(self, seed: int, time_boundary: int | None, samples: int):
        n = self.samples or samples
        results = []
        worst: Verdict | None = None
        for d in self.suite.drivers:
            v = check_driver(d, self.suite, seed, n)
            row = {"driver": d.name, "verdict": v.outcome.value, "message": v.message}
            if v.inputs is not None:
                row["inputs"] = dict(v.inputs)
            if v.tag:
                row["tag"] = v.tag
            if "resample_rate" in v.details:
                row["resample_rate"] = round(v.details["resample_rate"], 6)
            results.append(row)
            if worst is None or v.outcome.severity > worst.outcome.severity:
                worst = v
            if self.fail_fast and v.outcome is Outcome.VIOLATED:
                break
        if worst is None:
            worst = Verdict(Outcome.HOLDS, f"{self.name}: no drivers")
        failing = [r["driver"] for r in results if r["verdict"] == Outcome.VIOLATED.value]
        if worst.outcome is Outcome.VIOLATED:
            message = f"{self.name}: violated by {', '.join(failing)}"
        else:
            message = f"{self.name}: {len(results)} drivers, worst verdict {worst.outcome.value}"
        verdict = Verdict(worst.outcome, message, inputs=worst.inputs, tag=worst.tag, details=worst.details)
        return verdict, {"drivers": results, "samples": n}


@dataclass(frozen=True, eq=False)
class ProbeItem:
    """A free-standing check such as a contract-divergence probe."""

    name: str
    run: Callable[[int], Verdict]
    description: str
    group: str = ""
    template: str = "PROBE"

    def problems(self, time_boundary: int | None) -> list:
        return []

    def rendering(self, time_boundary: int | None = None) -> str:
        return f"{self.name}: {self.description}"

    def execute(self, seed: int, time_boundary: int | None, samples: int):
        v = self.run(seed)
        details = {k: v.details[k] for k in sorted(v.details)}
        return v, details
