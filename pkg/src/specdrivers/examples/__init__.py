"""Reference fixtures: containers, transition systems and seeded-fault variants."""

from __future__ import annotations

from typing import Callable

from ..errors import ResolutionError
from ..kernel import SystemModel
from .containers import (
    QUEUE_MUTANTS,
    STACK_MUTANTS,
    TREE_MUTANTS,
    bag_model,
    in_order,
    queue_model,
    stack_model,
    stack_of,
    tree_model,
)
from .flawed import FAULTY_VARIANTS, VARIANT_NAMES, array2_model, check_variant, flawed_container_library, sequence_model, variant_suite
from .systems import calendar_model, equinox_days, signals_model, turnstile_model

__all__ = [
    "FIXTURES",
    "build_fixture",
    "fixture_names",
    "flawed_container_library",
    "check_variant",
    "variant_suite",
    "stack_of",
    "in_order",
    "STACK_MUTANTS",
    "QUEUE_MUTANTS",
    "TREE_MUTANTS",
    "VARIANT_NAMES",
    "FAULTY_VARIANTS",
]


def _registry() -> dict:
    reg: dict[str, Callable[[int], SystemModel]] = {
        "stack": lambda seed: stack_model(),
        "queue": lambda seed: queue_model(),
        "tree": lambda seed: tree_model(),
        "bag": lambda seed: bag_model(),
        "turnstile": turnstile_model,
        "signals": signals_model,
        "calendar": lambda seed: calendar_model(seed, 2),
        "calendar_3eq": lambda seed: calendar_model(seed, 3),
        "array2_correct": lambda seed: array2_model(False),
        "array2_wipe_on_alias": lambda seed: array2_model(True),
        "linked_queue": lambda seed: sequence_model(False),
        "linked_queue_alias_bug": lambda seed: sequence_model(True),
    }
    for m in STACK_MUTANTS:
        reg[f"stack.{m}"] = lambda seed, m=m: stack_model(m)
    for m in QUEUE_MUTANTS:
        reg[f"queue.{m}"] = lambda seed, m=m: queue_model(m)
    for m in TREE_MUTANTS:
        reg[f"tree.{m}"] = lambda seed, m=m: tree_model(m)
    return reg


FIXTURES = _registry()


def fixture_names() -> tuple:
    return tuple(FIXTURES)


def build_fixture(name: str, seed: int = 0) -> SystemModel:
    """A fresh model for fixture ``name``; deterministic for a fixed seed."""
    try:
        factory = FIXTURES[name]
    except KeyError:
        raise ResolutionError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
    return factory(seed)
