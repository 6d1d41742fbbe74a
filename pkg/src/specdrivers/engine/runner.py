"""Suite execution: validate every item, run them, assemble the report."""

from __future__ import annotations

import fnmatch
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..adt.drivers import DEFAULT_SAMPLES
from ..errors import ConfigError
from ..kernel import Outcome, Verdict
from .items import item_key
from .report import FORMATS, Report, ReportItem

__all__ = ["SuiteConfig", "run_suite", "item_seed", "select_items"]


@dataclass
class SuiteConfig:
    items: list
    time_boundary: int | None = None
    seed: int = 0
    jobs: int = 1
    format: str = "json"
    samples: int = DEFAULT_SAMPLES
    timings: bool = False
    name: str = "suite"

    def problems(self) -> list:
        out = []
        if self.jobs < 1:
            out.append(f"jobs must be >= 1, got {self.jobs}")
        if self.samples < 1:
            out.append(f"samples must be >= 1, got {self.samples}")
        if self.time_boundary is not None and self.time_boundary < 1:
            out.append(f"time boundary must be >= 1, got {self.time_boundary}")
        if self.format not in FORMATS:
            out.append(f"unknown format {self.format!r}; expected one of {', '.join(FORMATS)}")
        return out


def item_seed(seed: int, key: str) -> int:
    """Per-item seed: independent of item order, parallelism and filtering."""
    return random.Random(f"{seed}/{key}").getrandbits(32)


def select_items(items, pattern: str | None):
    """Items whose ``group/name`` or bare name matches the glob ``pattern``."""
    if not pattern:
        return list(items)
    return [i for i in items if fnmatch.fnmatchcase(item_key(i), pattern) or fnmatch.fnmatchcase(i.name, pattern)]


def _witness(v: Verdict):
    if v.outcome not in (Outcome.VIOLATED, Outcome.BOUND_EXHAUSTED):
        return None
    out: dict = {}
    if v.trace is not None:
        out["trace"] = v.trace.to_json()
        out["step"] = v.step
    if v.inputs is not None:
        out["inputs"] = dict(v.inputs)
    return out


def _run_one(item, cfg: SuiteConfig) -> ReportItem:
    start = time.perf_counter()
    verdict, details = item.execute(item_seed(cfg.seed, item_key(item)), cfg.time_boundary, cfg.samples)
    millis = round((time.perf_counter() - start) * 1000, 3) if cfg.timings else None
    return ReportItem(
        name=item.name,
        group=item.group,
        template=item.template,
        verdict=verdict.outcome.value,
        message=verdict.message,
        witness=_witness(verdict),
        rendering=item.rendering(cfg.time_boundary),
        millis=millis,
        details=details,
    )


def run_suite(cfg: SuiteConfig) -> Report:
    """Execute every item exactly once; report order is declaration order.

    All configuration problems (bad options, duplicate names, unresolvable or
    unbounded requirements) are collected up front and raised together before
    anything runs.
    """
    problems = cfg.problems()
    seen = set()
    for item in cfg.items:
        key = item_key(item)
        if key in seen:
            problems.append(f"duplicate item {key}")
        seen.add(key)
        problems += item.problems(cfg.time_boundary)
    if problems:
        raise ConfigError(f"suite {cfg.name} cannot run", problems)
    if cfg.jobs > 1 and len(cfg.items) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(lambda it: _run_one(it, cfg), cfg.items))
    else:
        results = [_run_one(it, cfg) for it in cfg.items]
    return Report(suite=cfg.name, seed=cfg.seed, time_boundary=cfg.time_boundary, items=results)
