"""Builtin suites and the declarative suite-file format.

A suite file is an INI document; every section is one item::

    [EQUINOX_FREQUENCY]
    template = BOUNDED_EXISTENCE_BETWEEN
    k = 2
    model = calendar
    bind = P:equinox Q:year_beginning R:year_end
    bound = 366

or, for an ADT suite::

    [stack_axioms]
    adt = stack
    model = stack.pop_noop

See ``docs/suite-format.md`` for the grammar.
"""

from __future__ import annotations

import configparser
import random
import re
from functools import partial
from pathlib import Path

from ..adt.drivers import contract_divergence_probe
from ..adt.suites import build_queue_with_append_suite, build_stack_suite, build_tree_inord_suite
from ..errors import ConfigError, SpecDriverError
from ..examples import FIXTURES, build_fixture
from ..examples import contracts as C
from ..examples.containers import QUEUE_MUTANTS, STACK_MUTANTS, TREE_MUTANTS, stack_of
from ..examples.flawed import flawed_container_library, variant_suite
from ..kernel import SystemModel
from ..temporal.templates import get_template, instantiate_template
from .items import DriverSuiteItem, ProbeItem, RequirementItem

__all__ = [
    "BUILTIN_SUITES",
    "builtin_items",
    "load_suite_file",
    "parse_suite_text",
    "resolve_suite",
    "adt_suite_for",
    "ADT_KINDS",
]

ADT_KINDS = ("stack", "queue_with_append", "tree_with_in_order")

_ENTRY_KEYS = {"template", "model", "bind", "bound", "k", "adt", "queue_model", "samples"}


# -- helpers shared by builtins and files -------------------------------------------


def parse_bindings(text: str) -> dict:
    """``"P:equinox Q:year_beginning"`` (spaces or commas between pairs) to a dict."""
    out = {}
    for token in re.split(r"[\s,]+", text.strip()):
        if not token:
            continue
        slot, sep, target = token.partition(":")
        if not sep:
            slot, sep, target = token.partition("=")
        if not sep or not slot or not target:
            raise ConfigError(f"malformed binding {token!r}; expected SLOT:ID")
        if slot in out:
            raise ConfigError(f"slot {slot!r} bound twice")
        out[slot] = target
    return out


def adt_suite_for(kind: str, model: SystemModel, queue_model: SystemModel | None = None):
    """Build the driver suite of ADT ``kind`` against ``model``'s operations."""
    if kind == "stack":
        return build_stack_suite(model.binding(), model.equivalence())
    if kind == "queue_with_append":
        return build_queue_with_append_suite(model.binding(), model.equivalence())
    if kind == "tree_with_in_order":
        qm = queue_model or build_fixture("queue")
        qs = build_queue_with_append_suite(qm.binding(), qm.equivalence())
        return build_tree_inord_suite(model.binding(), qs, model.equivalence())
    raise ConfigError(f"unknown ADT {kind!r}; expected one of {', '.join(ADT_KINDS)}")


def _requirement(name, template, model, bindings, bound=None, k=None, group=""):
    t = get_template(template, k)
    return RequirementItem(instantiate_template(t, model, bindings, name, bound), group=group)


# -- builtin suites ---------------------------------------------------------------------


def _calendar(seed: int, variant: str = "calendar"):
    m = build_fixture(variant, seed)
    return [
        _requirement(
            "EQUINOX_FREQUENCY", "BOUNDED_EXISTENCE_BETWEEN", m,
            {"P": "equinox", "Q": "year_beginning", "R": "year_end"}, bound=366, k=2, group=variant,
        ),
        _requirement(
            "YEAR_END_RESPONDS_TO_YEAR_BEGINNING", "RESPONSE_GLOBAL", m,
            {"P": "year_beginning", "S": "year_end"}, bound=366, group=variant,
        ),
        _requirement(
            "EQUINOX_EACH_YEAR", "EXISTENCE_BETWEEN", m,
            {"P": "equinox", "Q": "year_beginning", "R": "year_end"}, bound=366, group=variant,
        ),
    ]


def _seeded_stack(model: SystemModel, seed: int):
    rng = random.Random(seed)
    return stack_of(model, [rng.randint(-99, 99) for _ in range(1 + rng.randrange(64))])


def _stack(seed: int):
    m = build_fixture("stack", seed)
    popping = get_template("STIMULUS_RESPONSE")
    bindings = {"stimulus": "not_is_empty", "response": "is_empty", "action": "pop", "timer": "count"}
    return [
        RequirementItem(
            instantiate_template(popping, m, bindings, "POPPING_EMPTIES_STACK"),
            group="stack",
            initial=partial(_seeded_stack, m),
        ),
        DriverSuiteItem(adt_suite_for("stack", m), group="stack", label="STACK_AXIOMS"),
    ]


def _queue(seed: int):
    m = build_fixture("queue", seed)
    return [DriverSuiteItem(adt_suite_for("queue_with_append", m), group="queue", label="QUEUE_WITH_APPEND_AXIOMS")]


def _tree(seed: int):
    m = build_fixture("tree", seed)
    return [
        DriverSuiteItem(
            adt_suite_for("tree_with_in_order", m, build_fixture("queue", seed)),
            group="tree",
            label="TREE_WITH_IN_ORDER_AXIOMS",
        )
    ]


def _turnstile(seed: int):
    m = build_fixture("turnstile", seed)
    return [
        _requirement(
            "CREDIT_IS_CONSUMED", "RESPONSE_GLOBAL", m, {"P": "coins_positive", "S": "locked"}, bound=16,
            group="turnstile",
        ),
        _requirement(
            "PUSHING_LOCKS_TURNSTILE", "STIMULUS_RESPONSE", m,
            {"stimulus": "coins_positive", "response": "locked", "action": "push", "timer": "coins"},
            group="turnstile",
        ),
    ]


def _flawed(seed: int):
    items = []
    for name, (variant, model) in flawed_container_library(seed).items():
        items.append(DriverSuiteItem(variant_suite(variant, model), group="flawed-containers", label=name))
    return items


def _mutants(seed: int):
    items = []
    queue_ref = build_fixture("queue", seed)
    for kind, mutants, prefix in (
        ("stack", STACK_MUTANTS, "stack"),
        ("queue_with_append", QUEUE_MUTANTS, "queue"),
        ("tree_with_in_order", TREE_MUTANTS, "tree"),
    ):
        for mu in mutants:
            m = build_fixture(f"{prefix}.{mu}", seed)
            suite = adt_suite_for(kind, m, queue_ref)
            items.append(DriverSuiteItem(suite, group="mutants", label=f"{prefix}.{mu}", fail_fast=True))
    return items


def _contracts(seed: int):
    return [
        ProbeItem(
            "SQUARE_MUL_VS_ZERO",
            partial(_probe, C.square_mul, C.square_zero, C.non_negative_result, C.integer_inputs, C.same_value),
            "square as x*x and square as 0 both satisfy 'Result >= 0'; do they agree?",
            group="contracts",
        ),
        ProbeItem(
            "SQUARE_MUL_VS_ITSELF",
            partial(_probe, C.square_mul, C.square_mul, C.non_negative_result, C.integer_inputs, C.same_value),
            "square as x*x against itself under 'Result >= 0'",
            group="contracts",
        ),
        ProbeItem(
            "STABLE_VS_UNSTABLE_SORT",
            partial(_probe, C.stable_sort, C.unstable_sort, C.sorted_permutation, C.record_lists, C.same_sequence),
            "stable and unstable sorts both satisfy 'output sorted by key'; do they agree?",
            group="contracts",
        ),
    ]


def _probe(a, b, contract, gen, eq, seed):
    return contract_divergence_probe(a, b, contract, gen, eq, budget=100, seed=seed)


BUILTIN_SUITES = {
    "calendar": _calendar,
    "calendar_3eq": partial(_calendar, variant="calendar_3eq"),
    "stack": _stack,
    "queue": _queue,
    "tree": _tree,
    "turnstile": _turnstile,
    "flawed-containers": _flawed,
    "mutants": _mutants,
    "contracts": _contracts,
}

_ALL_ORDER = ("calendar", "calendar_3eq", "stack", "queue", "tree", "turnstile", "contracts", "flawed-containers", "mutants")


def builtin_items(name: str, seed: int = 0) -> list:
    if name == "all":
        return [item for part in _ALL_ORDER for item in BUILTIN_SUITES[part](seed)]
    try:
        factory = BUILTIN_SUITES[name]
    except KeyError:
        known = ", ".join(list(BUILTIN_SUITES) + ["all"])
        raise ConfigError(f"unknown builtin suite {name!r}; known: {known}") from None
    return factory(seed)


# -- suite files --------------------------------------------------------------------


def _entry(name: str, section, seed: int, group: str):
    keys = set(section)
    unknown = sorted(keys - _ENTRY_KEYS)
    if unknown:
        raise ConfigError(f"[{name}]: unknown keys {unknown}")
    if "model" not in section:
        raise ConfigError(f"[{name}]: missing 'model'")
    if ("adt" in section) == ("template" in section):
        raise ConfigError(f"[{name}]: give exactly one of 'template' or 'adt'")
    if section["model"] not in FIXTURES:
        raise ConfigError(f"[{name}]: unknown model {section['model']!r}")
    model = build_fixture(section["model"], seed)
    if "adt" in section:
        qm = build_fixture(section["queue_model"], seed) if "queue_model" in section else None
        samples = int(section["samples"]) if "samples" in section else None
        return DriverSuiteItem(adt_suite_for(section["adt"], model, qm), group=group, label=name, samples=samples)
    bound = int(section["bound"]) if "bound" in section else None
    k = int(section["k"]) if "k" in section else None
    bindings = parse_bindings(section.get("bind", ""))
    return _requirement(name, section["template"], model, bindings, bound=bound, k=k, group=group)


def parse_suite_text(text: str, seed: int = 0, group: str = "") -> list:
    """Items declared in suite-file ``text``; every bad entry is reported at once."""
    parser = configparser.ConfigParser(
        interpolation=None, default_section="\x00defaults", delimiters=("=",), comment_prefixes=("#", ";")
    )
    parser.optionxform = str  # keep key case as written
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse suite file: {exc}") from None
    items, problems = [], []
    for name in parser.sections():
        try:
            items.append(_entry(name, parser[name], seed, group))
        except (SpecDriverError, ValueError) as exc:
            problems.append(f"[{name}]: {exc}" if not str(exc).startswith(f"[{name}]") else str(exc))
    if problems:
        raise ConfigError("suite file has unresolved entries", problems)
    return items


def load_suite_file(path, seed: int = 0) -> list:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read suite file {p}: {exc.strerror}") from None
    return parse_suite_text(text, seed, group=p.stem)


def resolve_suite(spec: str, seed: int = 0):
    """``builtin:NAME`` or a suite-file path to ``(suite name, items)``."""
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        return name, builtin_items(name, seed)
    return Path(spec).stem, load_suite_file(spec, seed)
