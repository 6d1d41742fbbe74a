"""Reference stack, queue-with-append and binary tree fixtures, plus mutants.

Each builder returns a :class:`SystemModel` whose actions/queries/conditions
are the abstract operations the ADT suites bind to.  A mutant replaces exactly
one operation of the reference with a faulty version.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..kernel import ActionDef, ConditionDef, EquivalenceDef, QueryDef, SystemModel, canonical

__all__ = [
    "StackState",
    "QueueState",
    "Leaf",
    "Node",
    "BagState",
    "stack_model",
    "queue_model",
    "tree_model",
    "bag_model",
    "STACK_MUTANTS",
    "QUEUE_MUTANTS",
    "TREE_MUTANTS",
    "in_order",
    "bag_twins",
]


@dataclass
class Tally:
    """Counter shared by every instance of one model (a class-level attribute)."""

    pushes: int = 0


@dataclass
class StackState:
    items: list
    size: int = 0
    shared: Tally = field(default_factory=Tally)

    def canonical(self) -> str:
        return f"Stack(items={canonical(self.items)}, size={self.size}, shared={self.shared.pushes})"


def _stack_regions(s: StackState):
    return {"items": canonical(s.items), "size": str(s.size), "shared": str(s.shared.pushes)}


def stack_model(mutant: str | None = None, name: str | None = None) -> SystemModel:
    """LIFO stack; ``mutant`` names one entry of :data:`STACK_MUTANTS`."""
    shared = Tally()

    def new():
        return StackState([], 0, shared)

    def push(s, x):
        s.items.append(x)
        s.size += 1

    def pop(s):
        s.items.pop()
        s.size -= 1

    def top(s):
        return s.items[-1]

    def count(s):
        return s.size

    if mutant == "pop_noop":
        def pop(s):
            pass
    elif mutant == "top_bottom":
        def top(s):
            return s.items[0]
    elif mutant == "push_twice":
        def push(s, x):
            s.items.extend((x, x))
            s.size += 2
    elif mutant == "count_stale":
        def pop(s):
            s.items.pop()
    elif mutant == "pop_bottom":
        def pop(s):
            s.items.pop(0)
            s.size -= 1
    elif mutant == "push_bumps_shared":
        def push(s, x):
            s.items.append(x)
            s.size += 1
            s.shared.pushes += 1
    elif mutant is not None:
        raise KeyError(f"unknown stack mutant {mutant!r}")

    not_empty = ConditionDef("not_is_empty", lambda s: len(s.items) > 0, "the stack is not empty")
    actions = {
        "new": ActionDef("new", new, creates=True),
        "push": ActionDef("push", push, modifies={"items", "size"}, arg_kinds=("value",)),
        "pop": ActionDef("pop", pop, guard=not_empty, modifies={"items", "size"}),
    }
    conditions = {
        "is_empty": ConditionDef("is_empty", lambda s: len(s.items) == 0, "the stack is empty"),
        "not_is_empty": not_empty,
    }
    queries = {
        "count": QueryDef("count", count, "the number of elements"),
        "top": QueryDef("top", top, "the top element"),
    }
    eq = EquivalenceDef("element_wise", lambda a, b: list(a.items) == list(b.items))

    def init(seed):
        rng = random.Random(seed)
        s = new()
        for _ in range(rng.randint(0, 8)):
            push(s, rng.randint(-9, 9))
        return s

    return SystemModel(
        name=name or ("stack" if mutant is None else f"stack.{mutant}"),
        init=init,
        actions=actions,
        conditions=conditions,
        queries=queries,
        equivalences={"element_wise": eq},
        regions=_stack_regions,
        description="unbounded LIFO stack of integers",
    )


def stack_of(model: SystemModel, items) -> StackState:
    s = model.actions["new"].invoke(None)
    for x in items:
        model.actions["push"].invoke(s, x)
    return s


STACK_MUTANTS = ("pop_noop", "top_bottom", "push_twice", "count_stale", "pop_bottom", "push_bumps_shared")


@dataclass
class QueueState:
    items: list

    def canonical(self) -> str:
        return f"Queue{canonical(self.items)}"


def queue_model(mutant: str | None = None, name: str | None = None) -> SystemModel:
    """FIFO queue with ``append`` (concatenate another queue onto the back)."""

    def new():
        return QueueState([])

    def put(q, x):
        q.items.append(x)

    def remove(q):
        q.items.pop(0)

    def item(q):
        return q.items[0]

    def count(q):
        return len(q.items)

    def append(q, other):
        q.items.extend(list(other.items))

    if mutant == "put_prepends":
        def put(q, x):
            q.items.insert(0, x)
    elif mutant == "append_prepends":
        def append(q, other):
            q.items[:0] = list(other.items)
    elif mutant == "remove_back":
        def remove(q):
            q.items.pop()
    elif mutant == "item_last":
        def item(q):
            return q.items[-1]
    elif mutant == "count_off":
        def count(q):
            return len(q.items) + 1
    elif mutant == "append_drains_source":
        def append(q, other):
            moved = list(other.items)
            other.items.clear()
            q.items.extend(moved)
    elif mutant is not None:
        raise KeyError(f"unknown queue mutant {mutant!r}")

    not_empty = ConditionDef("not_is_empty", lambda q: len(q.items) > 0, "the queue is not empty")
    actions = {
        "new": ActionDef("new", new, creates=True),
        "put": ActionDef("put", put, arg_kinds=("value",)),
        "remove": ActionDef("remove", remove, guard=not_empty),
        "append": ActionDef("append", append, arg_kinds=("instance",)),
    }
    conditions = {
        "is_empty": ConditionDef("is_empty", lambda q: len(q.items) == 0, "the queue is empty"),
        "not_is_empty": not_empty,
    }
    queries = {
        "item": QueryDef("item", item, "the oldest element"),
        "count": QueryDef("count", count, "the number of elements"),
    }
    eq = EquivalenceDef("element_wise", lambda a, b: list(a.items) == list(b.items))

    def init(seed):
        rng = random.Random(seed)
        return QueueState([rng.randint(-9, 9) for _ in range(rng.randint(0, 8))])

    return SystemModel(
        name=name or ("queue" if mutant is None else f"queue.{mutant}"),
        init=init,
        actions=actions,
        conditions=conditions,
        queries=queries,
        equivalences={"element_wise": eq},
        description="FIFO queue of integers with append",
    )


QUEUE_MUTANTS = ("put_prepends", "append_prepends", "remove_back", "item_last", "count_off", "append_drains_source")


@dataclass(frozen=True)
class Leaf:
    def canonical(self) -> str:
        return "."


@dataclass(frozen=True)
class Node:
    left: object
    item: int
    right: object

    def canonical(self) -> str:
        return f"({canonical(self.left)} {self.item} {canonical(self.right)})"


def in_order(t) -> list:
    """Direct recursive in-order traversal of the representation."""
    if isinstance(t, Leaf):
        return []
    return in_order(t.left) + [t.item] + in_order(t.right)


def _preorder(t) -> list:
    if isinstance(t, Leaf):
        return []
    return [t.item] + _preorder(t.left) + _preorder(t.right)


def tree_model(mutant: str | None = None, name: str | None = None) -> SystemModel:
    """Immutable binary tree whose ``in_ord`` returns a :class:`QueueState`."""

    def leaf():
        return Leaf()

    def node(l, x, r):
        return Node(l, x, r)

    def left(t):
        return t.left

    def right(t):
        return t.right

    def item(t):
        return t.item

    def in_ord(t):
        return QueueState(in_order(t))

    if mutant == "inord_preorder":
        def in_ord(t):
            return QueueState(_preorder(t))
    elif mutant == "inord_mirror":
        def in_ord(t):
            return QueueState(in_order(t)[::-1])
    elif mutant == "node_swaps":
        def node(l, x, r):
            return Node(r, x, l)
    elif mutant == "item_wrong":
        def item(t):
            return t.item + 1
    elif mutant == "inord_drops_root":
        def in_ord(t):
            if isinstance(t, Leaf):
                return QueueState([])
            return QueueState(in_order(t.left) + in_order(t.right))
    elif mutant == "left_returns_right":
        def left(t):
            return t.right
    elif mutant is not None:
        raise KeyError(f"unknown tree mutant {mutant!r}")

    def checked(fn):
        def run(t):
            if isinstance(t, Leaf):
                raise IndexError("leaf has no children or item")
            return fn(t)
        return run

    actions = {
        "leaf": ActionDef("leaf", leaf, creates=True),
        "node": ActionDef("node", node, creates=True, arg_kinds=("instance", "value", "instance")),
    }
    conditions = {"is_leaf": ConditionDef("is_leaf", lambda t: isinstance(t, Leaf), "the tree is a leaf")}
    queries = {
        "left": QueryDef("left", checked(left)),
        "right": QueryDef("right", checked(right)),
        "item": QueryDef("item", checked(item)),
        "in_ord": QueryDef("in_ord", in_ord, "the in-order sequence"),
    }
    eq = EquivalenceDef("structural", lambda a, b: canonical(a) == canonical(b))

    def init(seed):
        rng = random.Random(seed)

        def grow(n):
            if n == 0:
                return leaf()
            k = rng.randint(0, n - 1)
            return node(grow(k), rng.randint(0, 9), grow(n - 1 - k))

        return grow(rng.randint(0, 7))

    return SystemModel(
        name=name or ("tree" if mutant is None else f"tree.{mutant}"),
        init=init,
        actions=actions,
        conditions=conditions,
        queries=queries,
        equivalences={"structural": eq},
        clone=lambda t: t,
        description="binary tree with in-order traversal into a queue",
    )


TREE_MUTANTS = ("inord_preorder", "inord_mirror", "node_swaps", "item_wrong", "inord_drops_root", "left_returns_right")


@dataclass
class BagState:
    """Multiset stored as a list; ``salt`` and ``generation`` are representation only."""

    items: list
    salt: int = 0
    generation: int = 0

    def canonical(self) -> str:
        return f"Bag{canonical(self.items)}"


def bag_model() -> SystemModel:
    """Bag whose ``remove_any`` takes a largest element and reshuffles storage.

    The reshuffle is seeded by ``(salt, generation)``: equal bags with
    different salts end up with different storage orders.
    """

    def remove_any(b):
        b.items.remove(max(b.items))
        b.generation += 1
        random.Random(f"{b.salt}:{b.generation}").shuffle(b.items)

    def put(b, x):
        b.items.append(x)

    not_empty = ConditionDef("not_is_empty", lambda b: len(b.items) > 0)
    seq_eq = EquivalenceDef("sequence", lambda a, b: list(a.items) == list(b.items))
    bag_eq = EquivalenceDef("multiset", lambda a, b: sorted(a.items) == sorted(b.items))
    return SystemModel(
        name="bag",
        init=lambda seed: BagState([], seed),
        actions={
            "new": ActionDef("new", lambda salt=0: BagState([], salt), creates=True),
            "put": ActionDef("put", put, arg_kinds=("value",)),
            "remove_any": ActionDef("remove_any", remove_any, guard=not_empty),
        },
        conditions={"not_is_empty": not_empty},
        queries={"count": QueryDef("count", lambda b: len(b.items))},
        equivalences={"sequence": seq_eq, "multiset": bag_eq},
        description="bag with a nondeterministic-looking removal",
    )


def bag_twins(rng: random.Random, size: int) -> dict:
    """Equal bags (same storage order) that differ only in their salt."""
    items = [rng.randint(0, 9) for _ in range(rng.randint(1, max(size, 1)))]
    salt = rng.getrandbits(16)
    return {"s1": BagState(list(items), salt), "s2": BagState(list(items), salt + 1)}
