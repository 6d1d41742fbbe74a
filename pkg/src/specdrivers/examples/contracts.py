"""Implementation pairs that share a weak contract."""

from __future__ import annotations

from ..adt.drivers import InputGenerator
from ..kernel import ActionDef, EquivalenceDef

__all__ = [
    "square_mul",
    "square_zero",
    "non_negative_result",
    "integer_inputs",
    "stable_sort",
    "unstable_sort",
    "sorted_permutation",
    "record_lists",
    "same_value",
    "same_sequence",
]

square_mul = ActionDef("square_mul", lambda x: x * x, creates=True)
square_zero = ActionDef("square_zero", lambda x: 0, creates=True)


def non_negative_result(inputs, result) -> bool:
    return result >= 0


integer_inputs = InputGenerator(lambda rng, size: {"x": rng.randint(-1000, 1000)})


def _stable(records):
    return sorted(records, key=lambda r: r[0])


def _unstable(records):
    # equal keys come out in reverse input order
    indexed = list(enumerate(records))
    return [r for _, r in sorted(indexed, key=lambda p: (p[1][0], -p[0]))]


stable_sort = ActionDef("stable_sort", _stable, creates=True)
unstable_sort = ActionDef("unstable_sort", _unstable, creates=True)


def sorted_permutation(inputs, result) -> bool:
    """The output is ordered by key and is a rearrangement of the input."""
    keys = [r[0] for r in result]
    return keys == sorted(keys) and sorted(result) == sorted(inputs["records"])


record_lists = InputGenerator(
    lambda rng, size: {"records": [(rng.randint(0, 3), f"r{i}") for i in range(rng.randint(0, size))]}
)

same_value = EquivalenceDef("same_value", lambda a, b: a == b)
same_sequence = EquivalenceDef("same_sequence", lambda a, b: list(a) == list(b))
