"""System-under-specification abstraction shared by the temporal and ADT layers.

A :class:`SystemModel` bundles a state factory, an autonomous step and the
named conditions, actions and queries that requirements refer to.  States are
plain Python objects; :class:`StateRef` pairs one with the model that owns it
so that cross-model mistakes are caught instead of silently compared.
"""

from __future__ import annotations

import copy
import dataclasses
import enum
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import GuardError, ModelMismatchError, ResolutionError

__all__ = [
    "ActionDef",
    "ConditionDef",
    "EquivalenceDef",
    "Outcome",
    "QueryDef",
    "StateRef",
    "SystemModel",
    "Trace",
    "Verdict",
    "apply_action",
    "canonical",
    "check_equivalence",
    "clone_state",
    "eval_condition",
    "generate_trace",
]


def canonical(value: Any) -> str:
    """Order-stable textual form of ``value`` used for frame checks and witnesses."""
    method = getattr(value, "canonical", None)
    if callable(method) and not isinstance(value, type):
        return method()
    if isinstance(value, (list, tuple)):
        open_, close = ("[", "]") if isinstance(value, list) else ("(", ")")
        return open_ + ", ".join(canonical(v) for v in value) + close
    if isinstance(value, (set, frozenset)):
        return "{" + ", ".join(sorted(canonical(v) for v in value)) + "}"
    if isinstance(value, dict):
        items = sorted((canonical(k), canonical(v)) for k, v in value.items())
        return "{" + ", ".join(f"{k}: {v}" for k, v in items) + "}"
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        inner = ", ".join(
            f"{f.name}={canonical(getattr(value, f.name))}" for f in dataclasses.fields(value)
        )
        return f"{type(value).__name__}({inner})"
    return repr(value)


@dataclass(frozen=True)
class ConditionDef:
    """Named pure predicate over a state."""

    id: str
    eval: Callable[..., bool]
    text: str = ""

    @property
    def phrase(self) -> str:
        return self.text or self.id


@dataclass(frozen=True)
class QueryDef:
    """Named pure function over a state returning an arbitrary value."""

    id: str
    eval: Callable[..., Any]
    text: str = ""


@dataclass(frozen=True)
class ActionDef:
    """Named state transformer.

    ``apply(state, *args)`` may mutate ``state`` in place (returning ``None``)
    or return the successor.  Creators (``creates=True``) take only ``args`` and
    return a fresh state.  ``modifies`` names the regions the action may
    change; the region ``"self"`` stands for the target instance.
    """

    id: str
    apply: Callable[..., Any]
    guard: ConditionDef | None = None
    modifies: frozenset = frozenset({"self"})
    arg_kinds: tuple = ()
    creates: bool = False

    def __post_init__(self):
        object.__setattr__(self, "modifies", frozenset(self.modifies))
        object.__setattr__(self, "arg_kinds", tuple(self.arg_kinds))

    def invoke(self, state, *args):
        if self.creates:
            return self.apply(*args)
        if self.guard is not None and not self.guard.eval(state):
            raise GuardError(self.id)
        result = self.apply(state, *args)
        return state if result is None else result


@dataclass(frozen=True)
class EquivalenceDef:
    id: str
    eq: Callable[[Any, Any], bool]


def _default_regions(state) -> Mapping[str, str]:
    return {"state": canonical(state)}


@dataclass(frozen=True, eq=False)
class SystemModel:
    """A specified system: state factory, autonomous step and named vocabulary."""

    name: str
    init: Callable[[int], Any]
    main_step: Callable[[Any], Any] = lambda s: s
    actions: Mapping[str, ActionDef] = field(default_factory=dict)
    conditions: Mapping[str, ConditionDef] = field(default_factory=dict)
    queries: Mapping[str, QueryDef] = field(default_factory=dict)
    equivalences: Mapping[str, EquivalenceDef] = field(default_factory=dict)
    regions: Callable[[Any], Mapping[str, str]] = _default_regions
    clone: Callable[[Any], Any] = copy.deepcopy
    description: str = ""

    def __post_init__(self):
        for attr in ("actions", "conditions", "queries", "equivalences"):
            object.__setattr__(self, attr, dict(getattr(self, attr)))

    def __repr__(self):
        return f"SystemModel({self.name!r})"

    def condition(self, cid: str) -> ConditionDef:
        try:
            return self.conditions[cid]
        except KeyError:
            raise ResolutionError(f"model {self.name!r} has no condition {cid!r}") from None

    def action(self, aid: str) -> ActionDef:
        try:
            return self.actions[aid]
        except KeyError:
            raise ResolutionError(f"model {self.name!r} has no action {aid!r}") from None

    def query(self, qid: str) -> QueryDef:
        try:
            return self.queries[qid]
        except KeyError:
            raise ResolutionError(f"model {self.name!r} has no query {qid!r}") from None

    def equivalence(self, eid: str | None = None) -> EquivalenceDef:
        """Named equivalence, or canonical-serialization equality by default."""
        if eid is None:
            if self.equivalences:
                return next(iter(self.equivalences.values()))
            return EquivalenceDef("canonical", lambda a, b: self.serialize(a) == self.serialize(b))
        try:
            return self.equivalences[eid]
        except KeyError:
            raise ResolutionError(f"model {self.name!r} has no equivalence {eid!r}") from None

    def binding(self) -> dict:
        """All named operations of the model in one mapping."""
        out: dict = {}
        out.update(self.conditions)
        out.update(self.queries)
        out.update(self.actions)
        return out

    def serialize(self, state) -> str:
        return "\n".join(f"{k}={v}" for k, v in sorted(self.regions(state).items()))

    def start(self, seed: int = 0) -> "StateRef":
        return StateRef(self, self.init(seed))


class StateRef:
    """A state value together with the model that owns it."""

    __slots__ = ("model", "value")

    def __init__(self, model: SystemModel, value):
        self.model = model
        self.value = value

    def __repr__(self):
        return f"StateRef({self.model.name}, {canonical(self.value)})"


def _resolve_condition(cond, s: StateRef) -> ConditionDef:
    cid = cond if isinstance(cond, str) else cond.id
    registered = s.model.conditions.get(cid)
    if registered is None:
        raise ResolutionError(f"model {s.model.name!r} has no condition {cid!r}")
    return registered if isinstance(cond, str) else cond


def eval_condition(cond: ConditionDef | str, s: StateRef) -> bool:
    return bool(_resolve_condition(cond, s).eval(s.value))


def apply_action(act: ActionDef | str, s: StateRef, *args) -> StateRef:
    """Apply ``act`` to ``s``; raises :class:`GuardError` instead of skipping."""
    if isinstance(act, str):
        act = s.model.action(act)
    elif act.id not in s.model.actions:
        raise ResolutionError(f"model {s.model.name!r} has no action {act.id!r}")
    return StateRef(s.model, act.invoke(s.value, *args))


def clone_state(s: StateRef) -> StateRef:
    return StateRef(s.model, s.model.clone(s.value))


def check_equivalence(e: EquivalenceDef, a: StateRef, b: StateRef) -> bool:
    if a.model is not b.model:
        raise ModelMismatchError(
            f"cannot compare states of {a.model.name!r} and {b.model.name!r}"
        )
    return bool(e.eq(a.value, b.value))


class Outcome(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    BOUND_EXHAUSTED = "bound_exhausted"
    PRECONDITION_UNMET = "precondition_unmet"

    @property
    def severity(self) -> int:
        return _SEVERITY[self]


_SEVERITY = {
    Outcome.PRECONDITION_UNMET: 0,
    Outcome.HOLDS: 1,
    Outcome.BOUND_EXHAUSTED: 2,
    Outcome.VIOLATED: 3,
}


@dataclass(frozen=True)
class Trace:
    """Recorded condition valuations; step 0 is the initial state.

    Each step is stored as the frozenset of condition ids that hold there, so
    every step mentions the same condition set by construction.
    """

    conditions: tuple
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        steps = tuple(frozenset(s) for s in self.steps)
        known = set(self.conditions)
        for i, step in enumerate(steps):
            if not step <= known:
                raise ResolutionError(f"step {i} mentions unknown conditions {sorted(step - known)}")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def from_valuations(cls, valuations: Sequence[Mapping[str, bool]], conditions=None) -> "Trace":
        if conditions is None:
            conditions = sorted({k for v in valuations for k in v})
        return cls(tuple(conditions), tuple(frozenset(k for k, b in v.items() if b) for v in valuations))

    @classmethod
    def from_sets(cls, conditions: Iterable[str], steps: Iterable[Iterable[str]]) -> "Trace":
        return cls(tuple(conditions), tuple(frozenset(s) for s in steps))

    def __len__(self):
        return len(self.steps)

    @property
    def length(self) -> int:
        return len(self.steps)

    def holds(self, cid: str, i: int) -> bool:
        return cid in self.steps[i]

    def valuation(self, i: int) -> dict:
        step = self.steps[i]
        return {c: c in step for c in self.conditions}

    def prefix(self, n: int) -> "Trace":
        return Trace(self.conditions, self.steps[:n])

    def to_json(self, limit: int | None = None) -> dict:
        steps = self.steps if limit is None else self.steps[:limit]
        return {
            "conditions": list(self.conditions),
            "steps": [[c in s for c in self.conditions] for s in steps],
            "length": len(self.steps),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Trace":
        conds = tuple(data["conditions"])
        return cls(conds, tuple(frozenset(c for c, b in zip(conds, row) if b) for row in data["steps"]))


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one requirement or driver.

    Violated and BoundExhausted verdicts always carry a witness: a trace (with
    the offending step) for temporal checks, canonical inputs for drivers.
    """

    outcome: Outcome
    message: str = ""
    trace: Trace | None = None
    step: int | None = None
    inputs: Mapping[str, str] | None = None
    tag: str | None = None
    iterations: int | None = None
    details: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.outcome in (Outcome.VIOLATED, Outcome.BOUND_EXHAUSTED):
            if self.trace is None and self.inputs is None:
                raise ValueError(f"{self.outcome.value} verdict requires a witness")

    @property
    def witness(self):
        if self.trace is None:
            return None
        return self.trace, self.step

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS


def generate_trace(
    m: SystemModel,
    s0: StateRef,
    bound: int,
    conds: Sequence[ConditionDef | str],
) -> Trace:
    """Run ``m.main_step`` ``bound`` times from a clone of ``s0``, recording ``conds``."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if s0.model is not m:
        raise ModelMismatchError(f"state belongs to {s0.model.name!r}, not {m.name!r}")
    resolved = [m.condition(c if isinstance(c, str) else c.id) for c in conds]
    ids = tuple(dict.fromkeys(c.id for c in resolved))
    state = m.clone(s0.value)
    steps = [frozenset(c.id for c in resolved if c.eval(state))]
    for _ in range(bound):
        nxt = m.main_step(state)
        state = state if nxt is None else nxt
        steps.append(frozenset(c.id for c in resolved if c.eval(state)))
    return Trace(ids, tuple(steps))
