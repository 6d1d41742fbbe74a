"""Direct pattern semantics over recorded traces.

This is the operational counterpart of :func:`pattern_to_ltl`: the trace is
cut into scope segments and each pattern is checked by scanning the segment.
It never builds or evaluates a formula, so comparing the two routes is a
meaningful cross-check.

A segment is ``(start, end, closed)`` with ``end`` exclusive.  Closed
segments end at an ``R`` step; open ones run to the end of the trace, whose
true continuation is unknown.  Unmet liveness obligations in open segments are
*pending* (the bound ran out), everything else is a *violation*.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import ResolutionError
from ..kernel import Outcome, Trace, Verdict
from .patterns import Pattern, PatternKind, Scope, required_slots

__all__ = ["Segment", "segments", "monitor"]


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    closed: bool


def _first(steps, atom, frm=0):
    for i in range(frm, len(steps)):
        if atom in steps[i]:
            return i
    return None


def segments(scope: Scope, steps, q: str | None, r: str | None) -> list:
    n = len(steps)
    if scope is Scope.GLOBAL:
        return [Segment(0, n, False)]
    if scope is Scope.BEFORE_R:
        j = _first(steps, r)
        return [] if j is None else [Segment(0, j, True)]
    if scope is Scope.AFTER_Q:
        i = _first(steps, q)
        return [] if i is None else [Segment(i, n, False)]
    out = []
    for i in range(n):
        if q in steps[i] and r not in steps[i]:
            j = _first(steps, r, i + 1)
            if j is not None:
                out.append(Segment(i, j, True))
            elif scope is Scope.AFTER_Q_UNTIL_R:
                out.append(Segment(i, n, False))
    return out


# Each checker returns None (fine), ("violated", step) or ("pending", step).


def _missing(seg: Segment, origin: int):
    return ("violated", seg.end) if seg.closed else ("pending", origin)


def _absence(steps, seg, P, S, T, k):
    for m in range(seg.start, seg.end):
        if P in steps[m]:
            return ("violated", m)
    return None


def _existence(steps, seg, P, S, T, k):
    for m in range(seg.start, seg.end):
        if P in steps[m]:
            return None
    return _missing(seg, seg.start)


def _bounded_existence(steps, seg, P, S, T, k):
    episodes = 0
    prev = False
    for m in range(seg.start, seg.end):
        cur = P in steps[m]
        if cur and not prev:
            episodes += 1
            if episodes > k:
                return ("violated", m)
        prev = cur
    return None


def _universality(steps, seg, P, S, T, k):
    for m in range(seg.start, seg.end):
        if P not in steps[m]:
            return ("violated", m)
    return None


def _precedence(steps, seg, P, S, T, k):
    for m in range(seg.start, seg.end):
        if S in steps[m]:
            return None
        if P in steps[m]:
            return ("violated", m)
    return None


def _response(steps, seg, P, S, T, k):
    pending = None
    for m in range(seg.start, seg.end):
        if S in steps[m]:
            pending = None
        elif P in steps[m] and pending is None:
            pending = m
    return None if pending is None else _missing(seg, pending)


def _precedence_chain_2_1(steps, seg, P, S, T, k):
    # the first P must be preceded by an S and a strictly later T (T may share P's step)
    seen_s = False
    for m in range(seg.start, seg.end):
        if P in steps[m]:
            if seen_s and T in steps[m]:
                return None
            return ("violated", m)
        if seen_s and T in steps[m]:
            return None
        if S in steps[m]:
            seen_s = True
    return None


def _precedence_chain_1_2(steps, seg, P, S, T, k):
    # an S followed by a strictly later T requires a P at or before the first S
    first_s = None
    p_seen = False
    for m in range(seg.start, seg.end):
        if first_s is None:
            if P in steps[m]:
                p_seen = True
            if S in steps[m]:
                first_s = m
        elif T in steps[m]:
            return None if p_seen else ("violated", m)
    return None


def _response_chain_1_2(steps, seg, P, S, T, k):
    # every P needs an S at or after it and a T strictly after that S
    for m in range(seg.start, seg.end):
        if P in steps[m] and not _s_then_t(steps, m, seg.end, S, T):
            return _missing(seg, m)
    return None


def _s_then_t(steps, frm, end, S, T):
    s_at = None
    for m in range(frm, end):
        if s_at is not None and T in steps[m]:
            return True
        if s_at is None and S in steps[m]:
            s_at = m
    return False


def _response_chain_2_1(steps, seg, P, S, T, k):
    # every S that is later followed by a T needs a P at or after that first T
    for a in range(seg.start, seg.end):
        if S not in steps[a]:
            continue
        t_at = _first_in(steps, T, a + 1, seg.end)
        if t_at is None:
            continue
        if _first_in(steps, P, t_at, seg.end) is None:
            return _missing(seg, a)
    return None


def _first_in(steps, atom, frm, end):
    for m in range(frm, end):
        if atom in steps[m]:
            return m
    return None


_CHECKERS = {
    PatternKind.ABSENCE: _absence,
    PatternKind.EXISTENCE: _existence,
    PatternKind.BOUNDED_EXISTENCE: _bounded_existence,
    PatternKind.UNIVERSALITY: _universality,
    PatternKind.PRECEDENCE: _precedence,
    PatternKind.RESPONSE: _response,
    PatternKind.PRECEDENCE_CHAIN_2_1: _precedence_chain_2_1,
    PatternKind.PRECEDENCE_CHAIN_1_2: _precedence_chain_1_2,
    PatternKind.RESPONSE_CHAIN_2_1: _response_chain_2_1,
    PatternKind.RESPONSE_CHAIN_1_2: _response_chain_1_2,
}


def monitor(p: Pattern, sc: Scope, slots: Mapping[str, str], t: Trace) -> Verdict:
    """Classify ``t`` as Holds / Violated / BoundExhausted for ``(p, sc)``."""
    for s in required_slots(p, sc):
        if slots[s] not in t.conditions:
            raise ResolutionError(f"slot {s} -> {slots[s]!r} is not recorded in the trace")
    steps = t.steps
    P, S, T = slots.get("P"), slots.get("S"), slots.get("T")
    check = _CHECKERS[p.kind]
    violated = None
    pending = None
    for seg in segments(sc, steps, slots.get("Q"), slots.get("R")):
        res = check(steps, seg, P, S, T, p.k)
        if res is None:
            continue
        kind, step = res
        if kind == "violated":
            if violated is None or step < violated[0]:
                violated = (step, seg)
        elif pending is None or step < pending[0]:
            pending = (step, seg)
    label = f"{p.label}/{sc.value}"
    if violated is not None:
        step, seg = violated
        return Verdict(
            Outcome.VIOLATED,
            f"{label} violated at step {step} (segment {seg.start}..{seg.end})",
            trace=t,
            step=step,
        )
    if pending is not None:
        step, seg = pending
        return Verdict(
            Outcome.BOUND_EXHAUSTED,
            f"{label}: obligation from step {step} still pending at trace end ({len(t)} steps)",
            trace=t,
            step=step,
        )
    return Verdict(Outcome.HOLDS, f"{label} holds on {len(t)} steps")
