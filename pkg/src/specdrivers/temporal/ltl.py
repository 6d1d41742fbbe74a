"""LTL formula AST with finite-trace semantics.

Semantics over a trace of ``n`` steps, evaluated at position ``i``:

* ``Always(g)``      g holds at every j in [i, n)
* ``Eventually(g)``  g holds at some j in [i, n)
* ``Until(g, h)``    strong: h at some j >= i, g at every position in [i, j)
* ``Next(g)``        strong: i + 1 < n and g holds at i + 1

Weak until is sugar (:func:`weak_until`), not a node of its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterator

from ..errors import ResolutionError
from ..kernel import Trace

__all__ = [
    "Formula",
    "Atom",
    "Const",
    "Not",
    "And",
    "Or",
    "Implies",
    "Next",
    "Always",
    "Eventually",
    "Until",
    "TRUE",
    "FALSE",
    "weak_until",
    "conj",
    "disj",
    "atoms",
    "ltl_eval",
    "satisfaction",
    "pretty",
]


class Formula:
    __slots__ = ()

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __rshift__(self, other):
        return Implies(self, other)

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Const(Formula):
    value: bool

    def __repr__(self):
        return f"Const({self.value})"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula


@dataclass(frozen=True)
class Always(Formula):
    arg: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
FALSE = Const(False)


def weak_until(g: Formula, h: Formula) -> Formula:
    """``g W h`` = ``(g U h) or always g``."""
    return Or(Until(g, h), Always(g))


def conj(*fs: Formula) -> Formula:
    return reduce(And, fs)


def disj(*fs: Formula) -> Formula:
    return reduce(Or, fs)


def _children(f: Formula) -> tuple:
    if isinstance(f, (Atom, Const)):
        return ()
    if isinstance(f, (Not, Next, Always, Eventually)):
        return (f.arg,)
    return (f.left, f.right)


def walk(f: Formula) -> Iterator[Formula]:
    yield f
    for c in _children(f):
        yield from walk(c)


def atoms(f: Formula) -> frozenset:
    return frozenset(n.name for n in walk(f) if isinstance(n, Atom))


def satisfaction(f: Formula, t: Trace) -> tuple:
    """Truth value of ``f`` at every position of ``t``, by structural recursion."""
    n = len(t)
    if isinstance(f, Atom):
        if f.name not in t.conditions:
            raise ResolutionError(f"atom {f.name!r} is not recorded in the trace")
        return tuple(f.name in step for step in t.steps)
    if isinstance(f, Const):
        return (f.value,) * n
    if isinstance(f, Not):
        return tuple(not v for v in satisfaction(f.arg, t))
    if isinstance(f, And):
        a, b = satisfaction(f.left, t), satisfaction(f.right, t)
        return tuple(x and y for x, y in zip(a, b))
    if isinstance(f, Or):
        a, b = satisfaction(f.left, t), satisfaction(f.right, t)
        return tuple(x or y for x, y in zip(a, b))
    if isinstance(f, Implies):
        a, b = satisfaction(f.left, t), satisfaction(f.right, t)
        return tuple((not x) or y for x, y in zip(a, b))
    if isinstance(f, Next):
        g = satisfaction(f.arg, t)
        return tuple(g[i + 1] if i + 1 < n else False for i in range(n))
    if isinstance(f, Always):
        g = satisfaction(f.arg, t)
        return tuple(all(g[i:]) for i in range(n))
    if isinstance(f, Eventually):
        g = satisfaction(f.arg, t)
        return tuple(any(g[i:]) for i in range(n))
    if isinstance(f, Until):
        g, h = satisfaction(f.left, t), satisfaction(f.right, t)
        return tuple(_until_at(g, h, i) for i in range(n))
    raise TypeError(f"not a formula: {f!r}")


def _until_at(g, h, i):
    # first j >= i with h[j] decides, provided g held on [i, j)
    for j in range(i, len(h)):
        if h[j]:
            return True
        if not g[j]:
            return False
    return False


def ltl_eval(f: Formula, t: Trace, i: int = 0) -> bool:
    """Finite-trace truth of ``f`` on ``t`` at step ``i`` (``0 <= i < len(t)``)."""
    if not 0 <= i < len(t):
        raise IndexError(f"position {i} outside trace of length {len(t)}")
    return satisfaction(f, t)[i]


_BINARY = {And: "∧", Or: "∨", Implies: "⟹", Until: "𝒰"}
_UNARY = {Not: "¬", Always: "□", Eventually: "◇", Next: "○"}


def pretty(f: Formula) -> str:
    """Render with □/◇/𝒰 notation; every nested binary node is parenthesized."""
    return _pretty(f, top=True)


def _pretty(f: Formula, top: bool = False) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    sym = _UNARY.get(type(f))
    if sym is not None:
        inner = _pretty(f.arg)
        if isinstance(f.arg, (Atom, Const, Not)) or type(f.arg) in _UNARY:
            return f"{sym}{inner}"
        return f"{sym}{inner}" if inner.startswith("(") else f"{sym}({inner})"
    sym = _BINARY[type(f)]
    body = f"{_pretty(f.left)} {sym} {_pretty(f.right)}"
    return body if top else f"({body})"
