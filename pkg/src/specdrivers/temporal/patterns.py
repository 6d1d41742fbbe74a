"""Specification-pattern catalog: (pattern, scope) pairs compiled to LTL.

Slot letters follow the usual catalog conventions: ``P`` is the primary
condition, ``S`` and ``T`` the secondary ones (response / precedence / chain
members), ``Q`` opens a scope and ``R`` closes it.

Scoped formulas are built from two pattern-specific bodies evaluated at the
start of a scope segment: a *closed* body that assumes the closing ``R``
eventually occurs (strong untils), and an *open* body that also covers the
case where ``R`` never comes (weak untils for safety parts, strong for
liveness obligations).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from ..errors import InstantiationError, UnsupportedPatternError
from .ltl import (
    Always,
    And,
    Atom,
    Eventually,
    Formula,
    Implies,
    Next,
    Not,
    Or,
    Until,
    weak_until,
)

__all__ = [
    "PatternKind",
    "Pattern",
    "Scope",
    "pattern_slots",
    "scope_slots",
    "required_slots",
    "pattern_to_ltl",
    "supported_pairs",
    "UNSUPPORTED",
]


class PatternKind(enum.Enum):
    ABSENCE = "absence"
    EXISTENCE = "existence"
    BOUNDED_EXISTENCE = "bounded_existence"
    UNIVERSALITY = "universality"
    PRECEDENCE = "precedence"
    RESPONSE = "response"
    PRECEDENCE_CHAIN_2_1 = "precedence_chain_2_1"
    PRECEDENCE_CHAIN_1_2 = "precedence_chain_1_2"
    RESPONSE_CHAIN_2_1 = "response_chain_2_1"
    RESPONSE_CHAIN_1_2 = "response_chain_1_2"


@dataclass(frozen=True)
class Pattern:
    """A pattern id; ``k`` is only meaningful (and required) for bounded existence."""

    kind: PatternKind
    k: int | None = None

    def __post_init__(self):
        if self.kind is PatternKind.BOUNDED_EXISTENCE:
            if self.k is None:
                object.__setattr__(self, "k", 2)
            if not isinstance(self.k, int) or self.k < 1:
                raise ValueError(f"bounded existence needs k >= 1, got {self.k!r}")
        elif self.k is not None:
            raise ValueError(f"{self.kind.value} takes no k")

    @classmethod
    def bounded_existence(cls, k: int = 2) -> "Pattern":
        return cls(PatternKind.BOUNDED_EXISTENCE, k)

    @property
    def label(self) -> str:
        if self.kind is PatternKind.BOUNDED_EXISTENCE:
            return f"bounded_existence({self.k})"
        return self.kind.value


class Scope(enum.Enum):
    GLOBAL = "global"
    BEFORE_R = "before"
    AFTER_Q = "after"
    BETWEEN_Q_AND_R = "between"
    AFTER_Q_UNTIL_R = "after_until"


_PATTERN_SLOTS = {
    PatternKind.ABSENCE: ("P",),
    PatternKind.EXISTENCE: ("P",),
    PatternKind.BOUNDED_EXISTENCE: ("P",),
    PatternKind.UNIVERSALITY: ("P",),
    PatternKind.PRECEDENCE: ("P", "S"),
    PatternKind.RESPONSE: ("P", "S"),
    PatternKind.PRECEDENCE_CHAIN_2_1: ("P", "S", "T"),
    PatternKind.PRECEDENCE_CHAIN_1_2: ("P", "S", "T"),
    PatternKind.RESPONSE_CHAIN_2_1: ("P", "S", "T"),
    PatternKind.RESPONSE_CHAIN_1_2: ("P", "S", "T"),
}

_SCOPE_SLOTS = {
    Scope.GLOBAL: (),
    Scope.BEFORE_R: ("R",),
    Scope.AFTER_Q: ("Q",),
    Scope.BETWEEN_Q_AND_R: ("Q", "R"),
    Scope.AFTER_Q_UNTIL_R: ("Q", "R"),
}

# Pairs whose formula could not be validated against the segment monitor.
UNSUPPORTED: frozenset = frozenset()


def pattern_slots(p: Pattern | PatternKind) -> tuple:
    kind = p.kind if isinstance(p, Pattern) else p
    return _PATTERN_SLOTS[kind]


def scope_slots(sc: Scope) -> tuple:
    return _SCOPE_SLOTS[sc]


def required_slots(p: Pattern, sc: Scope) -> tuple:
    return pattern_slots(p) + scope_slots(sc)


def supported_pairs(ks=(1, 2, 3)):
    """Every (pattern, scope) pair the compiler accepts, bounded existence for each k."""
    out = []
    for kind in PatternKind:
        patterns = (
            [Pattern(kind, k) for k in ks] if kind is PatternKind.BOUNDED_EXISTENCE else [Pattern(kind)]
        )
        for p in patterns:
            for sc in Scope:
                if (kind, sc) not in UNSUPPORTED:
                    out.append((p, sc))
    return out


# -- pattern bodies ---------------------------------------------------------


def _global(kind: PatternKind, k, P, S, T) -> Formula:
    if kind is PatternKind.ABSENCE:
        return Always(Not(P))
    if kind is PatternKind.EXISTENCE:
        return Eventually(P)
    if kind is PatternKind.BOUNDED_EXISTENCE:
        f = Always(Not(P))
        for _ in range(k):
            f = weak_until(Not(P), weak_until(P, f))
        return f
    if kind is PatternKind.UNIVERSALITY:
        return Always(P)
    if kind is PatternKind.PRECEDENCE:
        return weak_until(Not(P), S)
    if kind is PatternKind.RESPONSE:
        return Always(Implies(P, Eventually(S)))
    if kind is PatternKind.PRECEDENCE_CHAIN_2_1:
        chain = And(And(S, Not(P)), Next(Until(Not(P), T)))
        return Implies(Eventually(P), Until(Not(P), chain))
    if kind is PatternKind.PRECEDENCE_CHAIN_1_2:
        return Implies(Eventually(And(S, Next(Eventually(T)))), Until(Not(S), P))
    if kind is PatternKind.RESPONSE_CHAIN_2_1:
        return Always(Implies(And(S, Next(Eventually(T))), Next(Eventually(And(T, Eventually(P))))))
    if kind is PatternKind.RESPONSE_CHAIN_1_2:
        return Always(Implies(P, Eventually(And(S, Next(Eventually(T))))))
    raise UnsupportedPatternError(kind.value)


def _segment_body(kind: PatternKind, k, P, S, T, R, closed: bool) -> Formula:
    """Pattern restricted to the segment starting here and ending before the next R.

    ``closed`` bodies may assume R occurs; open ones must also accept a
    trace that ends without R.
    """
    U = Until if closed else weak_until
    nR = Not(R)

    def within(x):
        # x at some later-or-current position strictly inside the segment
        return Until(nR, And(x, nR))

    if kind is PatternKind.ABSENCE:
        return U(Not(P), R)
    if kind is PatternKind.EXISTENCE:
        return within(P)
    if kind is PatternKind.BOUNDED_EXISTENCE:
        f = U(Not(P), R)
        for _ in range(k):
            f = U(And(Not(P), nR), Or(R, U(And(P, nR), Or(R, f))))
        return f
    if kind is PatternKind.UNIVERSALITY:
        return U(P, R)
    if kind is PatternKind.PRECEDENCE:
        return U(Not(P), Or(S, R))
    if kind is PatternKind.RESPONSE:
        return U(Implies(P, within(S)), R)
    s_then_t = And(And(S, nR), Next(within(T)))
    if kind is PatternKind.PRECEDENCE_CHAIN_2_1:
        return U(Not(P), Or(R, And(And(S, Not(P)), Next(Until(Not(P), T)))))
    if kind is PatternKind.PRECEDENCE_CHAIN_1_2:
        return U(Not(s_then_t), Or(R, P))
    if kind is PatternKind.RESPONSE_CHAIN_2_1:
        return U(Implies(s_then_t, Next(within(And(T, within(P))))), R)
    if kind is PatternKind.RESPONSE_CHAIN_1_2:
        return U(Implies(P, within(s_then_t)), R)
    raise UnsupportedPatternError(kind.value)


def _before(kind, k, P, S, T, R) -> Formula:
    if kind is PatternKind.EXISTENCE:
        return weak_until(Not(R), And(P, Not(R)))
    return Implies(Eventually(R), _segment_body(kind, k, P, S, T, R, closed=True))


def _after(kind, k, P, S, T, Q) -> Formula:
    g = _global(kind, k, P, S, T)
    if kind in (PatternKind.ABSENCE, PatternKind.UNIVERSALITY, PatternKind.RESPONSE,
                PatternKind.RESPONSE_CHAIN_1_2, PatternKind.RESPONSE_CHAIN_2_1):
        # suffix-closed bodies: checking from every Q equals checking from the first
        return Always(Implies(Q, g))
    if kind is PatternKind.EXISTENCE:
        return Or(Always(Not(Q)), Eventually(And(Q, Eventually(P))))
    return Implies(Eventually(Q), Until(Not(Q), And(Q, g)))


def _between(kind, k, P, S, T, Q, R) -> Formula:
    body = _segment_body(kind, k, P, S, T, R, closed=True)
    if kind is PatternKind.BOUNDED_EXISTENCE:
        return Always(Implies(And(Q, Eventually(R)), body))
    if kind is PatternKind.EXISTENCE:
        return Always(Implies(And(Q, Not(R)), weak_until(Not(R), And(P, Not(R)))))
    return Always(Implies(And(And(Q, Not(R)), Eventually(R)), body))


def _after_until(kind, k, P, S, T, Q, R) -> Formula:
    body = _segment_body(kind, k, P, S, T, R, closed=False)
    return Always(Implies(And(Q, Not(R)), body))


def pattern_to_ltl(p: Pattern, sc: Scope, slots: Mapping[str, str]) -> Formula:
    """Compile ``(p, sc)`` with slot letters mapped to atom names in ``slots``."""
    if not isinstance(p, Pattern):
        raise UnsupportedPatternError(f"not a pattern id: {p!r}")
    if (p.kind, sc) in UNSUPPORTED:
        raise UnsupportedPatternError(f"{p.label} / {sc.value} has no validated formula")
    need = required_slots(p, sc)
    missing = [s for s in need if s not in slots]
    extra = [s for s in slots if s not in need]
    if missing or extra:
        raise InstantiationError(
            f"{p.label}/{sc.value} needs slots {list(need)}; missing {missing}, unexpected {extra}",
            missing + extra,
        )
    a = {name: Atom(slots[name]) for name in need}
    P, S, T = a.get("P"), a.get("S"), a.get("T")
    Q, R = a.get("Q"), a.get("R")
    kind, k = p.kind, p.k
    if sc is Scope.GLOBAL:
        return _global(kind, k, P, S, T)
    if sc is Scope.BEFORE_R:
        return _before(kind, k, P, S, T, R)
    if sc is Scope.AFTER_Q:
        return _after(kind, k, P, S, T, Q)
    if sc is Scope.BETWEEN_Q_AND_R:
        return _between(kind, k, P, S, T, Q, R)
    if sc is Scope.AFTER_Q_UNTIL_R:
        return _after_until(kind, k, P, S, T, Q, R)
    raise UnsupportedPatternError(f"unknown scope {sc!r}")
