"""Prebuilt driver suites for stack, queue-with-append and binary tree ADTs.

Suites are written against abstract operation ids only.  Input generators
build instances through the bound operations too, so the same suite runs on
the reference fixtures and on any mutant or user implementation.
"""

from __future__ import annotations

import copy
from typing import Any, Mapping

from ..errors import ConfigError
from ..kernel import EquivalenceDef, canonical
from .drivers import (
    AxiomDriver,
    Call,
    DriverSuite,
    InputGenerator,
    Param,
    Snapshot,
    well_definedness_driver,
)

__all__ = [
    "STACK_OPERATIONS",
    "QUEUE_OPERATIONS",
    "TREE_OPERATIONS",
    "build_stack_suite",
    "build_queue_with_append_suite",
    "build_tree_inord_suite",
    "drain",
]

STACK_OPERATIONS = ("new", "push", "pop", "top", "is_empty", "count")
QUEUE_OPERATIONS = ("new", "put", "remove", "item", "is_empty", "count", "append")
TREE_OPERATIONS = ("leaf", "node", "left", "right", "item", "is_leaf", "in_ord")
QUEUE_PREFIX = "queue."


def _require(binding: Mapping[str, Any], ops, adt: str):
    missing = [op for op in ops if op not in binding]
    if missing:
        raise ConfigError(f"{adt} binding is incomplete", [f"missing operation {op!r}" for op in missing])


def _default_eq(eq):
    if eq is not None:
        return eq
    return EquivalenceDef("canonical", lambda a, b: canonical(a) == canonical(b))


def _fails(env, op, slot) -> bool:
    try:
        env.q(op, slot)
    except Exception:
        return True
    return False


def _driver(name, params, body, modifies, post, pre=None, gen=None, covers=(), description=""):
    return AxiomDriver(
        name=name,
        params=tuple(Param(p) if isinstance(p, str) else p for p in params),
        pre=pre or (lambda env: True),
        body=tuple(body),
        modifies=frozenset(modifies),
        post=post,
        generator=gen,
        covers=tuple(covers),
        description=description,
    )


# -- stack ---------------------------------------------------------------------


def _sequence_builder(binding, new_op, add_op):
    new, add = binding[new_op], binding[add_op]

    def build(values):
        s = new.invoke(None)
        for v in values:
            s = add.invoke(s, v)
        return s

    return build


def _values(rng, size):
    return [rng.randint(-9, 9) for _ in range(rng.randint(0, size))]


def _pair_gen(build, extra=()):
    """Two instances, equal nine times out of ten, plus value slots."""

    def fn(rng, size):
        vals = _values(rng, size)
        other = vals if rng.random() < 0.9 else _values(rng, size)
        out = {"s_1": build(vals), "s_2": build(other)}
        for e in extra:
            out[e] = rng.randint(-9, 9)
        return out

    return InputGenerator(fn)


def _one_gen(build, slot="s", extra=(), nonempty=False):
    def fn(rng, size):
        vals = _values(rng, size)
        if nonempty and not vals:
            vals = [rng.randint(-9, 9)]
        out = {slot: build(vals)}
        for e in extra:
            out[e] = rng.randint(-9, 9)
        return out

    return InputGenerator(fn)


def _twin_gen(build, extra=()):
    """Slots ``s1``/``s2`` built from the same values, for well-definedness."""

    def fn(rng, size):
        vals = _values(rng, size)
        out = {"s1": build(vals), "s2": build(vals)}
        for e in extra:
            out[e] = build(_values(rng, size)) if e == "other" else rng.randint(-9, 9)
        return out

    return InputGenerator(fn)


def _values_gen(*names):
    return InputGenerator(lambda rng, size: {n: rng.randint(-9, 9) for n in names})


def build_stack_suite(binding: Mapping[str, Any], eq: EquivalenceDef | None = None) -> DriverSuite:
    """Axioms of a LIFO stack over operations new, push, pop, top, is_empty, count."""
    _require(binding, STACK_OPERATIONS, "stack")
    eq = _default_eq(eq)
    build = _sequence_builder(binding, "new", "push")
    one = _one_gen(build, extra=("x",))
    nonempty = _one_gen(build, nonempty=True)

    def count(env, slot):
        return env.q("count", slot)

    drivers = [
        _driver(
            "push_then_pop",
            ["s_1", "s_2", Param("x", "value")],
            [Call("push", "s_1", ("x",)), Call("pop", "s_1")],
            {"s_1"},
            lambda env: env.eq("s_1", "s_2"),
            pre=lambda env: env.eq("s_1", "s_2"),
            gen=_pair_gen(build, ("x",)),
            description="popping a stack after pushing an element gives back the original stack",
        ),
        _driver(
            "push_increments_count",
            ["s", Param("x", "value")],
            [Snapshot("s", "old_s"), Call("push", "s", ("x",))],
            {"s"},
            lambda env: count(env, "s") == count(env, "old_s") + 1,
            gen=one,
            covers=[("count", "push")],
        ),
        _driver(
            "top_after_push",
            ["s", Param("x", "value")],
            [Call("push", "s", ("x",))],
            {"s"},
            lambda env: env.q("top", "s") == env["x"],
            gen=one,
            covers=[("top", "push")],
        ),
        _driver(
            "push_makes_nonempty",
            ["s", Param("x", "value")],
            [Call("push", "s", ("x",))],
            {"s"},
            lambda env: not env.q("is_empty", "s"),
            gen=one,
            covers=[("is_empty", "push")],
        ),
        _driver(
            "new_is_empty",
            [],
            [Call("new", out="s")],
            set(),
            lambda env: env.q("is_empty", "s"),
            gen=_values_gen(),
            covers=[("is_empty", "new")],
        ),
        _driver(
            "new_count_zero",
            [],
            [Call("new", out="s")],
            set(),
            lambda env: count(env, "s") == 0,
            gen=_values_gen(),
            covers=[("count", "new")],
        ),
        _driver(
            "new_has_no_top",
            [],
            [Call("new", out="s")],
            set(),
            lambda env: _fails(env, "top", "s"),
            gen=_values_gen(),
            covers=[("top", "new")],
        ),
        _driver(
            "pop_decrements_count",
            ["s"],
            [Snapshot("s", "old_s"), Call("pop", "s")],
            {"s"},
            lambda env: count(env, "s") == count(env, "old_s") - 1,
            pre=lambda env: not env.q("is_empty", "s"),
            gen=nonempty,
            covers=[("count", "pop")],
        ),
        _driver(
            "top_after_pop",
            ["s", Param("x", "value"), Param("y", "value")],
            [Call("push", "s", ("x",)), Call("push", "s", ("y",)), Call("pop", "s")],
            {"s"},
            lambda env: env.q("top", "s") == env["x"],
            gen=_one_gen(build, extra=("x", "y")),
            covers=[("top", "pop")],
        ),
        _driver(
            "pop_single_is_empty",
            [Param("x", "value")],
            [Call("new", out="s"), Call("push", "s", ("x",)), Call("pop", "s")],
            set(),
            lambda env: env.q("is_empty", "s"),
            gen=_values_gen("x"),
            covers=[("is_empty", "pop")],
        ),
        well_definedness_driver(binding["push"], eq, _twin_gen(build, ("x",)), arg_slots=("x",), name="push_is_well_defined"),
        well_definedness_driver(binding["pop"], eq, _twin_gen(build), name="pop_is_well_defined"),
    ]
    # the pop well-definedness driver needs non-empty twins
    pop_wd = drivers[-1]
    drivers[-1] = AxiomDriver(
        pop_wd.name,
        pop_wd.params,
        lambda env, _pre=pop_wd.pre: _pre(env) and not env.q("is_empty", "s1"),
        pop_wd.body,
        pop_wd.modifies,
        pop_wd.post,
        pop_wd.generator,
        equivalence=pop_wd.equivalence,
        description=pop_wd.description,
    )
    return DriverSuite(
        adt_name="stack",
        drivers=drivers,
        binding=dict(binding),
        equivalence=eq,
        observers=("top", "is_empty", "count"),
        constructors=("new", "push", "pop"),
    )


# -- queue with append -----------------------------------------------------------


def build_queue_with_append_suite(binding: Mapping[str, Any], eq: EquivalenceDef | None = None) -> DriverSuite:
    """FIFO and append axioms over new, put, remove, item, is_empty, count, append."""
    _require(binding, QUEUE_OPERATIONS, "queue_with_append")
    eq = _default_eq(eq)
    build = _sequence_builder(binding, "new", "put")
    one = _one_gen(build, slot="q", extra=("x",))
    nonempty = _one_gen(build, slot="q", nonempty=True)

    def three(rng, size):
        return {k: build(_values(rng, size)) for k in ("a", "b", "c")}

    def two(rng, size):
        return {k: build(_values(rng, size)) for k in ("a", "b")}

    def count(env, slot):
        return env.q("count", slot)

    def item_after_put(env):
        if env.q("is_empty", "old_q"):
            return env.q("item", "q") == env["x"]
        return env.q("item", "q") == env.q("item", "old_q")

    def item_after_append(env):
        if not env.q("is_empty", "old_a"):
            return env.q("item", "a") == env.q("item", "old_a")
        if not env.q("is_empty", "b"):
            return env.q("item", "a") == env.q("item", "b")
        return env.q("is_empty", "a")

    drivers = [
        _driver("new_is_empty", [], [Call("new", out="q")], set(), lambda env: env.q("is_empty", "q"),
                gen=_values_gen(), covers=[("is_empty", "new")]),
        _driver("new_count_zero", [], [Call("new", out="q")], set(), lambda env: count(env, "q") == 0,
                gen=_values_gen(), covers=[("count", "new")]),
        _driver("new_has_no_item", [], [Call("new", out="q")], set(), lambda env: _fails(env, "item", "q"),
                gen=_values_gen(), covers=[("item", "new")]),
        _driver("put_makes_nonempty", ["q", Param("x", "value")], [Call("put", "q", ("x",))], {"q"},
                lambda env: not env.q("is_empty", "q"), gen=one, covers=[("is_empty", "put")]),
        _driver("put_increments_count", ["q", Param("x", "value")],
                [Snapshot("q", "old_q"), Call("put", "q", ("x",))], {"q"},
                lambda env: count(env, "q") == count(env, "old_q") + 1, gen=one, covers=[("count", "put")]),
        _driver("item_after_put", ["q", Param("x", "value")],
                [Snapshot("q", "old_q"), Call("put", "q", ("x",))], {"q"},
                item_after_put, gen=one, covers=[("item", "put")],
                description="putting at the back does not change the front unless the queue was empty"),
        _driver("remove_decrements_count", ["q"], [Snapshot("q", "old_q"), Call("remove", "q")], {"q"},
                lambda env: count(env, "q") == count(env, "old_q") - 1,
                pre=lambda env: not env.q("is_empty", "q"), gen=nonempty, covers=[("count", "remove")]),
        _driver("fifo_remove", [Param("x", "value"), Param("y", "value")],
                [Call("new", out="q"), Call("put", "q", ("x",)), Call("put", "q", ("y",)), Call("remove", "q")],
                set(), lambda env: env.q("item", "q") == env["y"], gen=_values_gen("x", "y"),
                covers=[("item", "remove")], description="the first element put is the first removed"),
        _driver("remove_single_is_empty", [Param("x", "value")],
                [Call("new", out="q"), Call("put", "q", ("x",)), Call("remove", "q")], set(),
                lambda env: env.q("is_empty", "q"), gen=_values_gen("x"), covers=[("is_empty", "remove")]),
        _driver("remove_put_commute", ["q", Param("x", "value")],
                [Snapshot("q", "r"), Call("put", "q", ("x",)), Call("remove", "q"),
                 Call("remove", "r"), Call("put", "r", ("x",))], {"q"},
                lambda env: env.eq("q", "r"), pre=lambda env: not env.q("is_empty", "q"),
                gen=_one_gen(build, slot="q", extra=("x",), nonempty=True)),
        _driver("append_adds_counts", ["a", "b"],
                [Snapshot("a", "old_a"), Call("append", "a", ("b",))], {"a"},
                lambda env: count(env, "a") == count(env, "old_a") + count(env, "b"),
                gen=InputGenerator(two), covers=[("count", "append")]),
        _driver("item_after_append", ["a", "b"],
                [Snapshot("a", "old_a"), Call("append", "a", ("b",))], {"a"},
                item_after_append, gen=InputGenerator(two), covers=[("item", "append")],
                description="appending keeps the front of the receiving queue"),
        _driver("append_empty_iff", ["a", "b"],
                [Snapshot("a", "old_a"), Call("append", "a", ("b",))], {"a"},
                lambda env: env.q("is_empty", "a") == (env.q("is_empty", "old_a") and env.q("is_empty", "b")),
                gen=InputGenerator(two), covers=[("is_empty", "append")]),
        _driver("append_right_identity", ["q"],
                [Snapshot("q", "old_q"), Call("new", out="e"), Call("append", "q", ("e",))], {"q"},
                lambda env: env.eq("q", "old_q"), gen=_one_gen(build, slot="q")),
        _driver("append_left_identity", ["q"],
                [Call("new", out="e"), Call("append", "e", ("q",))], set(),
                lambda env: env.eq("e", "q"), gen=_one_gen(build, slot="q")),
        _driver("append_associative", ["a", "b", "c"],
                [Snapshot("a", "left"), Call("append", "left", ("b",)), Call("append", "left", ("c",)),
                 Snapshot("b", "bc"), Call("append", "bc", ("c",)),
                 Snapshot("a", "right"), Call("append", "right", ("bc",))],
                set(), lambda env: env.eq("left", "right"), gen=InputGenerator(three),
                description="(a + b) + c ~ a + (b + c), leaving a, b and c untouched"),
        well_definedness_driver(binding["put"], eq, _twin_gen(build, ("x",)), arg_slots=("x",), name="put_is_well_defined"),
        well_definedness_driver(binding["append"], eq, _twin_gen(build, ("other",)), arg_slots=("other",),
                                name="append_is_well_defined"),
    ]
    rm = well_definedness_driver(binding["remove"], eq, _twin_gen(build), name="remove_is_well_defined")
    drivers.append(
        AxiomDriver(rm.name, rm.params, lambda env, _pre=rm.pre: _pre(env) and not env.q("is_empty", "s1"),
                    rm.body, rm.modifies, rm.post, rm.generator, equivalence=rm.equivalence,
                    description=rm.description)
    )
    return DriverSuite(
        adt_name="queue_with_append",
        drivers=drivers,
        binding=dict(binding),
        equivalence=eq,
        observers=("item", "is_empty", "count"),
        constructors=("new", "put", "remove", "append"),
    )


def drain(queue_binding: Mapping[str, Any], q) -> list:
    """Contents of ``q`` front to back, read through ``item``/``remove`` on a copy."""
    q = copy.deepcopy(q)
    out = []
    is_empty, item, remove = queue_binding["is_empty"], queue_binding["item"], queue_binding["remove"]
    while not is_empty.eval(q):
        out.append(item.eval(q))
        q = remove.invoke(q)
        if len(out) > 10_000:
            raise RuntimeError("queue does not drain")
    return out


# -- binary tree with in-order -----------------------------------------------------------


def build_tree_inord_suite(
    binding: Mapping[str, Any],
    queue_suite: DriverSuite | None,
    eq: EquivalenceDef | None = None,
) -> DriverSuite:
    """Binary tree axioms plus the in-order traversal into a certified queue."""
    if queue_suite is None:
        raise ConfigError("the tree suite needs a queue_with_append suite for the result of in_ord")
    if queue_suite.adt_name != "queue_with_append":
        raise ConfigError(f"in_ord results must be certified by a queue_with_append suite, got {queue_suite.adt_name}")
    _require(binding, TREE_OPERATIONS, "tree")
    eq = _default_eq(eq)
    qb = queue_suite.binding
    qeq = queue_suite.equivalence
    leaf, node = binding["leaf"], binding["node"]

    def grow(rng, n):
        if n == 0:
            return leaf.invoke(None)
        k = rng.randint(0, n - 1)
        return node.invoke(None, grow(rng, k), rng.randint(0, 9), grow(rng, n - 1 - k))

    def shape(rng, n):
        # a reproducible recipe so that twins are built independently
        if n == 0:
            return None
        k = rng.randint(0, n - 1)
        return (shape(rng, k), rng.randint(0, 9), shape(rng, n - 1 - k))

    def from_shape(sh):
        if sh is None:
            return leaf.invoke(None)
        return node.invoke(None, from_shape(sh[0]), sh[1], from_shape(sh[2]))

    def parts(rng, size):
        return {"l": grow(rng, rng.randint(0, size)), "x": rng.randint(0, 9), "r": grow(rng, rng.randint(0, size))}

    def tree_gen(rng, size):
        return {"t": grow(rng, rng.randint(0, size))}

    def twins(rng, size):
        sh = shape(rng, rng.randint(0, size))
        return {"s1": from_shape(sh), "s2": from_shape(sh)}

    def traversal(env, t):
        def walk(t):
            if env.q("is_leaf", t):
                return []
            return walk(env.q("left", t)) + [env.q("item", t)] + walk(env.q("right", t))

        return walk(t)

    def inord_node(env):
        expected = env["expected"]
        return env.eq(env["got"], expected, "queue")

    pgen = InputGenerator(parts, max_size=5)
    drivers = [
        _driver("leaf_is_leaf", [], [Call("leaf", out="t")], set(), lambda env: env.q("is_leaf", "t"),
                gen=_values_gen(), covers=[("is_leaf", "leaf")]),
        _driver("leaf_has_no_left", [], [Call("leaf", out="t")], set(), lambda env: _fails(env, "left", "t"),
                gen=_values_gen(), covers=[("left", "leaf")]),
        _driver("leaf_has_no_right", [], [Call("leaf", out="t")], set(), lambda env: _fails(env, "right", "t"),
                gen=_values_gen(), covers=[("right", "leaf")]),
        _driver("leaf_has_no_item", [], [Call("leaf", out="t")], set(), lambda env: _fails(env, "item", "t"),
                gen=_values_gen(), covers=[("item", "leaf")]),
        _driver("node_is_not_leaf", ["l", Param("x", "value"), "r"], [Call("node", args=("l", "x", "r"), out="t")],
                set(), lambda env: not env.q("is_leaf", "t"), gen=pgen, covers=[("is_leaf", "node")]),
        _driver("left_of_node", ["l", Param("x", "value"), "r"], [Call("node", args=("l", "x", "r"), out="t")],
                set(), lambda env: env.eq(env.q("left", "t"), "l"), gen=pgen, covers=[("left", "node")]),
        _driver("right_of_node", ["l", Param("x", "value"), "r"], [Call("node", args=("l", "x", "r"), out="t")],
                set(), lambda env: env.eq(env.q("right", "t"), "r"), gen=pgen, covers=[("right", "node")]),
        _driver("item_of_node", ["l", Param("x", "value"), "r"], [Call("node", args=("l", "x", "r"), out="t")],
                set(), lambda env: env.q("item", "t") == env["x"], gen=pgen, covers=[("item", "node")]),
        _driver("in_ord_leaf", [], [Call("leaf", out="t"), Call("in_ord", "t", out="got"),
                                    Call(QUEUE_PREFIX + "new", out="expected")],
                set(), inord_node, gen=_values_gen(), covers=[("in_ord", "leaf")],
                description="the in-order sequence of a leaf is the empty queue"),
        _driver("in_ord_node", ["l", Param("x", "value"), "r"],
                [Call("node", args=("l", "x", "r"), out="t"), Call("in_ord", "t", out="got"),
                 Call("in_ord", "l", out="expected"), Call(QUEUE_PREFIX + "put", "expected", ("x",)),
                 Call("in_ord", "r", out="tail"), Call(QUEUE_PREFIX + "append", "expected", ("tail",))],
                set(), inord_node, gen=pgen, covers=[("in_ord", "node")],
                description="in_ord(node(l, x, r)) ~ in_ord(l) + [x] + in_ord(r)"),
        _driver("in_ord_matches_traversal", ["t"], [Call("in_ord", "t", out="got")], set(),
                lambda env: drain(qb, env["got"]) == traversal(env, env["t"]),
                gen=InputGenerator(tree_gen, max_size=9),
                description="in_ord agrees with a direct recursive traversal"),
        well_definedness_driver(binding["in_ord"], eq, InputGenerator(twins, max_size=9), result_eq=qeq,
                                name="in_ord_is_well_defined"),
    ]
    full = dict(binding)
    for op in QUEUE_OPERATIONS:
        full[QUEUE_PREFIX + op] = qb[op]
    return DriverSuite(
        adt_name="tree_with_in_order",
        drivers=drivers,
        binding=full,
        equivalence=eq,
        observers=("is_leaf", "left", "right", "item", "in_ord"),
        constructors=("leaf", "node"),
        equivalences={"queue": qeq},
    )
