"""A container library whose ``copy_`` routines carry seeded faults.

Seventeen container and iterator classes each implement ``copy_(other)``
(make the receiver a copy of ``other``).  Six of them are faulty: five ignore
the case where ``other`` is the receiver itself, and one produces results that
depend on representation details hidden by equality.  This is a constructed
analog of a real library audit, not a reproduction of it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from ..adt.drivers import (
    DriverSuite,
    InputGenerator,
    aliasing_self_copy_driver,
    check_driver,
    well_definedness_driver,
)
from ..kernel import ActionDef, EquivalenceDef, SystemModel, Verdict

__all__ = [
    "Seq",
    "Array2",
    "HashBag",
    "Cursor",
    "CopyVariant",
    "VARIANT_NAMES",
    "FAULTY_VARIANTS",
    "array2_model",
    "sequence_model",
    "flawed_container_library",
    "variant_suite",
    "check_variant",
]


@dataclass
class Seq:
    items: list
    capacity: int = 0


@dataclass
class Array2:
    rows: int
    cols: int
    data: list


@dataclass
class HashBag:
    """Hash set (keys) or table (key/value pairs); ``order`` is the bucket layout."""

    order: list


@dataclass
class Cursor:
    target: object
    index: int


# -- copy routines -----------------------------------------------------------------


def _seq_copy(s, other):
    s.items = list(other.items)
    s.capacity = max(s.capacity, len(s.items))


def _seq_copy_wipe_first(s, other):
    # empties the receiver, then walks ``other``, which may be the receiver
    s.items.clear()
    for x in other.items:
        s.items.append(x)
    s.capacity = max(s.capacity, len(s.items))


def _array2_copy(a, other):
    a.rows, a.cols, a.data = other.rows, other.cols, list(other.data)


def _array2_copy_wipe(a, other):
    a.rows, a.cols = other.rows, other.cols
    a.data = [0] * (other.rows * other.cols)
    for i in range(len(a.data)):
        a.data[i] = other.data[i]


def _hash_copy(h, other):
    h.order = list(other.order)


def _cursor_copy(c, other):
    c.target, c.index = other.target, other.index


def _cursor_copy_restart(c, other):
    # repositions the receiver before reading ``other``'s position
    c.target = other.target
    c.index = 0
    c.index = other.index


def _cursor_copy_index_only(c, other):
    # copies the position but keeps iterating the receiver's own layout
    c.index = other.index


# -- equalities ---------------------------------------------------------------------


def _current(c: Cursor):
    seq = c.target.items if isinstance(c.target, Seq) else c.target.order
    return seq[c.index] if 0 <= c.index < len(seq) else None


def _hash_key(h: HashBag):
    return sorted(h.order, key=repr)


EQ_SEQ = EquivalenceDef("same_items", lambda a, b: a.items == b.items)
EQ_ARRAY2 = EquivalenceDef("same_cells", lambda a, b: (a.rows, a.cols, a.data) == (b.rows, b.cols, b.data))
EQ_HASH = EquivalenceDef("same_elements", lambda a, b: _hash_key(a) == _hash_key(b))
EQ_CURSOR = EquivalenceDef(
    "same_position", lambda a, b: a.target.items == b.target.items and a.index == b.index
)
EQ_HASH_CURSOR = EquivalenceDef(
    "same_current", lambda a, b: _hash_key(a.target) == _hash_key(b.target) and _current(a) == _current(b)
)


# -- generators ------------------------------------------------------------------------


def _ints(rng, n):
    return [rng.randint(1, 99) for _ in range(n)]


def _seq(rng, size):
    items = _ints(rng, rng.randint(0, size))
    return Seq(items, len(items) + rng.randint(0, 4))


def _array2(rng, size):
    r, c = rng.randint(0, max(size // 2, 0)), rng.randint(0, max(size // 2, 0))
    return Array2(r, c, _ints(rng, r * c))


def _hash(rng, size, table=False):
    keys = rng.sample(range(1, 100), rng.randint(0, size))
    order = [(k, rng.randint(0, 9)) for k in keys] if table else keys
    return HashBag(order)


def _reordered(h: HashBag, rng) -> HashBag:
    order = list(h.order)
    rng.shuffle(order)
    return HashBag(order)


def _list_cursor(rng, size):
    target = _seq(rng, max(size, 1))
    return Cursor(target, rng.randint(0, len(target.items)))


def _hash_cursor(rng, size, table=False):
    target = _hash(rng, max(size, 1), table)
    return Cursor(target, rng.randint(0, len(target.order)))


@dataclass(frozen=True)
class Kind:
    make: Callable  # (rng, size) -> instance
    twin: Callable  # (rng, instance) -> equal instance, possibly laid out differently
    eq: EquivalenceDef


def _seq_twin(rng, s):
    return Seq(list(s.items), len(s.items) + rng.randint(0, 4))


def _array2_twin(rng, a):
    return Array2(a.rows, a.cols, list(a.data))


def _hash_twin(rng, h):
    return _reordered(h, rng)


def _list_cursor_twin(rng, c):
    return Cursor(_seq_twin(rng, c.target), c.index)


def _hash_cursor_twin(rng, c):
    target = _reordered(c.target, rng)
    cur = _current(c)
    index = target.order.index(cur) if cur is not None else len(target.order)
    return Cursor(target, index)


KINDS = {
    "sequence": Kind(_seq, _seq_twin, EQ_SEQ),
    "array2": Kind(_array2, _array2_twin, EQ_ARRAY2),
    "hash_set": Kind(lambda rng, n: _hash(rng, n), _hash_twin, EQ_HASH),
    "hash_table": Kind(lambda rng, n: _hash(rng, n, True), _hash_twin, EQ_HASH),
    "list_cursor": Kind(_list_cursor, _list_cursor_twin, EQ_CURSOR),
    "hash_set_cursor": Kind(lambda rng, n: _hash_cursor(rng, n), _hash_cursor_twin, EQ_HASH_CURSOR),
    "hash_table_cursor": Kind(lambda rng, n: _hash_cursor(rng, n, True), _hash_cursor_twin, EQ_HASH_CURSOR),
}


def _source_for(kind: str, rng, size, receiver):
    """A copy source compatible with ``receiver`` (same element count for hash cursors)."""
    if kind.endswith("cursor") and kind.startswith("hash"):
        n = len(receiver.target.order)
        target = _hash(rng, n, kind == "hash_table_cursor")
        while len(target.order) != n:
            target = _hash(rng, n, kind == "hash_table_cursor")
        return Cursor(target, rng.randint(0, n))
    return KINDS[kind].make(rng, size)


# -- the library ----------------------------------------------------------------------


@dataclass(frozen=True)
class CopyVariant:
    name: str
    kind: str
    copy: Callable
    fault: str | None = None  # "aliasing", "well_definedness" or None

    @property
    def faulty(self) -> bool:
        return self.fault is not None


_LIBRARY = (
    CopyVariant("V_ARRAY", "sequence", _seq_copy),
    CopyVariant("V_ARRAY2", "array2", _array2_copy_wipe, "aliasing"),
    CopyVariant("V_ARRAYED_LIST", "sequence", _seq_copy),
    CopyVariant("V_ARRAYED_LIST_ITERATOR", "list_cursor", _cursor_copy_restart, "aliasing"),
    CopyVariant("V_ARRAYED_QUEUE", "sequence", _seq_copy),
    CopyVariant("V_ARRAYED_STACK", "sequence", _seq_copy),
    CopyVariant("V_ARRAY_ITERATOR", "list_cursor", _cursor_copy_restart, "aliasing"),
    CopyVariant("V_DOUBLY_LINKED_LIST", "sequence", _seq_copy),
    CopyVariant("V_DOUBLY_LINKED_LIST_ITERATOR", "list_cursor", _cursor_copy),
    CopyVariant("V_HASH_SET", "hash_set", _hash_copy),
    CopyVariant("V_HASH_SET_ITERATOR", "hash_set_cursor", _cursor_copy_index_only, "well_definedness"),
    CopyVariant("V_HASH_TABLE", "hash_table", _hash_copy),
    CopyVariant("V_HASH_TABLE_ITERATOR", "hash_table_cursor", _cursor_copy),
    CopyVariant("V_LINKED_LIST", "sequence", _seq_copy),
    CopyVariant("V_LINKED_LIST_ITERATOR", "list_cursor", _cursor_copy),
    CopyVariant("V_LINKED_QUEUE", "sequence", _seq_copy_wipe_first, "aliasing"),
    CopyVariant("V_LINKED_STACK", "sequence", _seq_copy_wipe_first, "aliasing"),
)

VARIANT_NAMES = tuple(v.name for v in _LIBRARY)
FAULTY_VARIANTS = tuple(v.name for v in _LIBRARY if v.faulty)


def _model(v: CopyVariant, seed: int) -> SystemModel:
    kind = KINDS[v.kind]
    return SystemModel(
        name=v.name,
        init=lambda s: kind.make(random.Random(f"{seed}:{s}"), 6),
        actions={"copy_": ActionDef("copy_", v.copy, arg_kinds=("instance",))},
        equivalences={kind.eq.id: kind.eq},
        description=f"{v.name} with its copy_ routine",
    )


def flawed_container_library(seed: int = 0) -> dict:
    """Variant name -> (variant, model); iteration order is alphabetical."""
    return {v.name: (v, _model(v, seed)) for v in _LIBRARY}


def variant_suite(v: CopyVariant, model: SystemModel | None = None) -> DriverSuite:
    """Self-aliasing and well-definedness drivers for one ``copy_`` routine."""
    model = model or _model(v, 0)
    kind = KINDS[v.kind]
    op = model.actions["copy_"]

    def alias_inputs(rng, size):
        return {"x": kind.make(rng, max(size, 1))}

    def twin_inputs(rng, size):
        s1 = kind.make(rng, max(size, 1))
        return {"s1": s1, "s2": kind.twin(rng, s1), "other": _source_for(v.kind, rng, size, s1)}

    drivers = (
        aliasing_self_copy_driver(op, kind.eq, InputGenerator(alias_inputs), name=f"{v.name}.copy_self_alias"),
        well_definedness_driver(
            op, kind.eq, InputGenerator(twin_inputs), arg_slots=("other",), name=f"{v.name}.copy_is_well_defined"
        ),
    )
    return DriverSuite(v.name, drivers, {"copy_": op}, kind.eq)


def check_variant(v: CopyVariant, seed: int = 0, samples: int = 200) -> Verdict:
    """Worst verdict of the aliasing and well-definedness drivers."""
    suite = variant_suite(v)
    worst = None
    for d in suite.drivers:
        verdict = check_driver(d, suite, seed, samples)
        if worst is None or verdict.outcome.severity > worst.outcome.severity:
            worst = verdict
    return worst


def array2_model(wipe_on_alias: bool = False) -> SystemModel:
    """2-D array whose ``copy_`` is either correct or wipes data when aliased."""
    copy = _array2_copy_wipe if wipe_on_alias else _array2_copy
    return SystemModel(
        name="array2_wipe_on_alias" if wipe_on_alias else "array2_correct",
        init=lambda s: _array2(random.Random(s), 6),
        actions={"copy_": ActionDef("copy_", copy, arg_kinds=("instance",))},
        equivalences={EQ_ARRAY2.id: EQ_ARRAY2},
        description="two-dimensional array with a copy routine",
    )


def sequence_model(wipe_first: bool = False, name: str | None = None) -> SystemModel:
    """Linked queue stand-in whose ``copy_`` may ignore aliasing."""
    copy = _seq_copy_wipe_first if wipe_first else _seq_copy
    return SystemModel(
        name=name or ("linked_queue_alias_bug" if wipe_first else "linked_queue"),
        init=lambda s: _seq(random.Random(s), 6),
        actions={"copy_": ActionDef("copy_", copy, arg_kinds=("instance",))},
        equivalences={EQ_SEQ.id: EQ_SEQ},
        description="linked queue with a copy routine",
    )
