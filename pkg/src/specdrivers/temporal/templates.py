"""Reusable requirement templates and their instantiation against models."""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from typing import Mapping

from ..errors import ConfigError, GuardError, InstantiationError, ResolutionError
from ..kernel import Outcome, StateRef, SystemModel, Trace, Verdict, generate_trace
from .ltl import Formula
from .monitor import monitor
from .patterns import Pattern, PatternKind, Scope, pattern_slots, pattern_to_ltl, scope_slots

__all__ = [
    "DEFAULT_TIME_BOUNDARY",
    "SlotDecl",
    "TemporalTemplate",
    "TemporalRequirement",
    "STIMULUS_RESPONSE",
    "template_catalog",
    "get_template",
    "instantiate_template",
    "verify_stimulus_response",
    "check_pattern",
    "check_requirement",
    "requirement_formula",
]

DEFAULT_TIME_BOUNDARY = sys.maxsize

PATTERN_FAMILY = "pattern"
STIMULUS_RESPONSE_FAMILY = "stimulus_response"


@dataclass(frozen=True)
class SlotDecl:
    name: str
    kind: str  # "condition", "action" or "timer"


@dataclass(frozen=True)
class TemporalTemplate:
    id: str
    family: str
    pattern: Pattern
    scope: Scope
    slots: tuple
    text_skeleton: str

    @property
    def slot_names(self) -> tuple:
        return tuple(s.name for s in self.slots)


@dataclass(frozen=True, eq=False)
class TemporalRequirement:
    name: str
    template: TemporalTemplate
    model: SystemModel
    bindings: Mapping[str, str]
    time_boundary: int = DEFAULT_TIME_BOUNDARY

    def __post_init__(self):
        object.__setattr__(self, "bindings", dict(self.bindings))
        if self.time_boundary < 1:
            raise InstantiationError(f"time boundary must be >= 1, got {self.time_boundary}")
        open_slots = [s for s in self.template.slot_names if s not in self.bindings]
        if open_slots:
            raise InstantiationError(f"requirement {self.name!r} has open slots {open_slots}", open_slots)

    def __repr__(self):
        return f"TemporalRequirement({self.name!r}, {self.template.id}, {self.model.name})"

    @property
    def condition_ids(self) -> tuple:
        kinds = {s.name: s.kind for s in self.template.slots}
        return tuple(dict.fromkeys(v for k, v in self.bindings.items() if kinds[k] == "condition"))


# -- catalog ----------------------------------------------------------------

_PATTERN_NAMES = {
    PatternKind.ABSENCE: "ABSENCE",
    PatternKind.EXISTENCE: "EXISTENCE",
    PatternKind.BOUNDED_EXISTENCE: "BOUNDED_EXISTENCE",
    PatternKind.UNIVERSALITY: "UNIVERSALITY",
    PatternKind.PRECEDENCE: "PRECEDENCE",
    PatternKind.RESPONSE: "RESPONSE",
    PatternKind.PRECEDENCE_CHAIN_2_1: "PRECEDENCE_CHAIN_2_1",
    PatternKind.PRECEDENCE_CHAIN_1_2: "PRECEDENCE_CHAIN_1_2",
    PatternKind.RESPONSE_CHAIN_2_1: "RESPONSE_CHAIN_2_1",
    PatternKind.RESPONSE_CHAIN_1_2: "RESPONSE_CHAIN_1_2",
}

_SCOPE_NAMES = {
    Scope.GLOBAL: "GLOBAL",
    Scope.BEFORE_R: "BEFORE",
    Scope.AFTER_Q: "AFTER",
    Scope.BETWEEN_Q_AND_R: "BETWEEN",
    Scope.AFTER_Q_UNTIL_R: "AFTER_UNTIL",
}

_SCOPE_TEXT = {
    Scope.GLOBAL: "Globally",
    Scope.BEFORE_R: "Before {R}",
    Scope.AFTER_Q: "After {Q}",
    Scope.BETWEEN_Q_AND_R: "Between {Q} and {R}",
    Scope.AFTER_Q_UNTIL_R: "After {Q} until {R}",
}

_PATTERN_TEXT = {
    PatternKind.ABSENCE: "it is never the case that {P} holds",
    PatternKind.EXISTENCE: "{P} eventually holds",
    PatternKind.BOUNDED_EXISTENCE: "{P} becomes true not more than {k} times",
    PatternKind.UNIVERSALITY: "it is always the case that {P} holds",
    PatternKind.PRECEDENCE: "it is always the case that if {P} holds, then {S} previously held",
    PatternKind.RESPONSE: "it is always the case that if {P} holds, then {S} eventually holds",
    PatternKind.PRECEDENCE_CHAIN_2_1: (
        "it is always the case that if {P} holds, then {S} and afterwards {T} previously held"
    ),
    PatternKind.PRECEDENCE_CHAIN_1_2: (
        "it is always the case that if {S} and afterwards {T} hold, then {P} previously held"
    ),
    PatternKind.RESPONSE_CHAIN_2_1: (
        "it is always the case that if {S} and afterwards {T} hold, then {P} eventually holds after {T}"
    ),
    PatternKind.RESPONSE_CHAIN_1_2: (
        "it is always the case that if {P} holds, then {S} and afterwards {T} eventually hold"
    ),
}

STIMULUS_RESPONSE = TemporalTemplate(
    id="STIMULUS_RESPONSE",
    family=STIMULUS_RESPONSE_FAMILY,
    pattern=Pattern(PatternKind.RESPONSE),
    scope=Scope.GLOBAL,
    slots=(
        SlotDecl("stimulus", "condition"),
        SlotDecl("response", "condition"),
        SlotDecl("action", "action"),
        SlotDecl("timer", "timer"),
    ),
    text_skeleton=(
        "Whenever {stimulus} holds, repeatedly applying {action} makes {response} hold "
        "within {timer} steps"
    ),
)


def _pattern_template(p: Pattern, sc: Scope) -> TemporalTemplate:
    slots = tuple(SlotDecl(s, "condition") for s in pattern_slots(p) + scope_slots(sc))
    body = _PATTERN_TEXT[p.kind]
    if p.k is not None:
        body = body.replace("{k}", str(p.k))
    return TemporalTemplate(
        id=f"{_PATTERN_NAMES[p.kind]}_{_SCOPE_NAMES[sc]}",
        family=PATTERN_FAMILY,
        pattern=p,
        scope=sc,
        slots=slots,
        text_skeleton=f"{_SCOPE_TEXT[sc]}, {body}",
    )


def template_catalog(k: int = 2) -> dict:
    """All templates by id; bounded-existence templates use bound ``k``."""
    out = {STIMULUS_RESPONSE.id: STIMULUS_RESPONSE}
    for kind in PatternKind:
        p = Pattern(kind, k) if kind is PatternKind.BOUNDED_EXISTENCE else Pattern(kind)
        for sc in Scope:
            t = _pattern_template(p, sc)
            out[t.id] = t
    return out


_TEMPLATE_ID = re.compile(r"^([A-Z0-9_]+?)(?:\((\d+)\))?$")


def get_template(tid: str, k: int | None = None) -> TemporalTemplate:
    """Look up ``tid``; ``BOUNDED_EXISTENCE_*(k)`` or the ``k`` argument set the bound."""
    m = _TEMPLATE_ID.match(tid.strip())
    if not m:
        raise ResolutionError(f"malformed template id {tid!r}")
    base, k_text = m.group(1), m.group(2)
    if k_text is not None:
        if k is not None and int(k_text) != k:
            raise ResolutionError(f"conflicting bounds for {tid!r}: {k_text} vs {k}")
        k = int(k_text)
    catalog = template_catalog(2 if k is None else k)
    if base not in catalog:
        raise ResolutionError(f"unknown template {base!r}")
    t = catalog[base]
    if k is not None and t.pattern.kind is not PatternKind.BOUNDED_EXISTENCE:
        raise ResolutionError(f"template {base!r} takes no bound k")
    return t


def instantiate_template(
    t: TemporalTemplate,
    m: SystemModel,
    bindings: Mapping[str, str],
    name: str,
    bound: int | None = None,
) -> TemporalRequirement:
    """Bind every slot of ``t`` to an id of ``m``; the template itself is untouched."""
    declared = {s.name: s.kind for s in t.slots}
    missing = [s for s in declared if s not in bindings]
    extra = [s for s in bindings if s not in declared]
    unresolved = []
    for slot, target in bindings.items():
        kind = declared.get(slot)
        table = {"condition": m.conditions, "action": m.actions, "timer": m.queries}.get(kind)
        if table is not None and target not in table:
            unresolved.append(f"{slot}={target}")
    if missing or extra or unresolved:
        parts = []
        if missing:
            parts.append(f"missing slots {missing}")
        if extra:
            parts.append(f"unknown slots {extra}")
        if unresolved:
            parts.append(f"ids not defined by model {m.name!r}: {unresolved}")
        raise InstantiationError(
            f"cannot instantiate {t.id} as {name}: " + "; ".join(parts),
            missing + extra + unresolved,
        )
    return TemporalRequirement(
        name=name,
        template=t,
        model=m,
        bindings=dict(bindings),
        time_boundary=DEFAULT_TIME_BOUNDARY if bound is None else bound,
    )


def requirement_formula(r: TemporalRequirement) -> Formula:
    if r.template.family != PATTERN_FAMILY:
        raise ConfigError(f"{r.name} is not a pattern requirement")
    return pattern_to_ltl(r.template.pattern, r.template.scope, r.bindings)


def verify_stimulus_response(r: TemporalRequirement, s0: StateRef, time_boundary: int | None = None) -> Verdict:
    """Run the stimulus/response loop: apply the action until the response holds.

    The timer evaluated on ``s0`` is the loop variant; each iteration spends one
    unit of it.  Running out of variant is a violation, running into the time
    boundary first leaves the requirement undecided.
    """
    if r.template.family != STIMULUS_RESPONSE_FAMILY:
        raise ConfigError(f"{r.name} does not instantiate a stimulus/response template")
    m = r.model
    if s0.model is not m:
        raise ResolutionError(f"initial state belongs to {s0.model.name!r}, not {m.name!r}")
    stim = m.condition(r.bindings["stimulus"])
    resp = m.condition(r.bindings["response"])
    act = m.action(r.bindings["action"])
    timer = m.query(r.bindings["timer"])
    boundary = r.time_boundary if time_boundary is None else time_boundary
    conds = tuple(dict.fromkeys((stim.id, resp.id)))

    state = m.clone(s0.value)
    steps = []

    def record():
        steps.append(frozenset(c.id for c in (stim, resp) if c.eval(state)))

    def trace():
        return Trace(conds, tuple(steps))

    record()
    if not stim.eval(state):
        if resp.eval(state):
            return Verdict(
                Outcome.HOLDS,
                f"{r.name}: response already holds and the stimulus does not; 0 iterations",
                trace=trace(),
                iterations=0,
                details={"vacuous": True, "variant": 0, "timer_values": [int(timer.eval(state))]},
            )
        return Verdict(
            Outcome.PRECONDITION_UNMET,
            f"{r.name}: stimulus {stim.id} does not hold on the initial state",
            trace=trace(),
            iterations=0,
        )

    variant = max(int(timer.eval(state)), 0)
    timer_values = [int(timer.eval(state))]
    iterations = 0
    while not resp.eval(state):
        if iterations >= variant:
            return Verdict(
                Outcome.VIOLATED,
                f"{r.name}: {resp.id} not reached within the variant ({variant} iterations)",
                trace=trace(),
                step=iterations,
                tag="variant",
                iterations=iterations,
                details={"variant": variant, "timer_values": timer_values},
            )
        if iterations >= boundary:
            return Verdict(
                Outcome.BOUND_EXHAUSTED,
                f"{r.name}: time boundary {boundary} reached before {resp.id}",
                trace=trace(),
                step=iterations,
                iterations=iterations,
                details={"variant": variant, "timer_values": timer_values},
            )
        try:
            state = act.invoke(state)
        except GuardError as exc:
            return Verdict(
                Outcome.VIOLATED,
                f"{r.name}: {exc} at iteration {iterations}",
                trace=trace(),
                step=iterations,
                tag="guard",
                iterations=iterations,
                details={"variant": variant, "timer_values": timer_values},
            )
        iterations += 1
        record()
        timer_values.append(int(timer.eval(state)))
    return Verdict(
        Outcome.HOLDS,
        f"{r.name}: {resp.id} reached after {iterations} iterations (variant {variant})",
        trace=trace(),
        iterations=iterations,
        details={"variant": variant, "timer_values": timer_values},
    )


def check_pattern(r: TemporalRequirement, t: Trace) -> Verdict:
    """Classify a recorded trace against a pattern requirement."""
    if r.template.family != PATTERN_FAMILY:
        raise ConfigError(f"{r.name} is not a pattern requirement")
    return monitor(r.template.pattern, r.template.scope, r.bindings, t)


def check_requirement(r: TemporalRequirement, s0: StateRef, time_boundary: int | None = None) -> Verdict:
    """Verify ``r`` from ``s0``: loop semantics or trace-and-monitor, by family."""
    if r.template.family == STIMULUS_RESPONSE_FAMILY:
        return verify_stimulus_response(r, s0, time_boundary)
    bound = r.time_boundary if time_boundary is None else time_boundary
    if bound >= DEFAULT_TIME_BOUNDARY:
        raise ConfigError(f"{r.name}: pattern checks need a finite time boundary")
    trace = generate_trace(r.model, s0, bound, r.condition_ids)
    return check_pattern(r, trace)
