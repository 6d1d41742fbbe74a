"""Transition-system fixtures: a coin turnstile, a day-stepping calendar and a signal table."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..kernel import ActionDef, ConditionDef, QueryDef, SystemModel

__all__ = [
    "TurnstileState",
    "CalendarState",
    "DEFAULT_SCRIPT",
    "turnstile_model",
    "calendar_model",
    "equinox_days",
    "YEAR_LENGTH",
    "SIGNAL_NAMES",
    "signals_model",
]

DEFAULT_SCRIPT = ("coin", "push", "idle", "coin", "coin", "push", "push", "idle")


@dataclass
class TurnstileState:
    coins: int = 0
    passages: int = 0
    tick: int = 0
    script: tuple = DEFAULT_SCRIPT


def turnstile_model(seed: int = 0) -> SystemModel:
    """Turnstile that credits coins and lets one person through per coin.

    ``main_step`` replays a script of events (``coin``, ``push``, ``idle``);
    seed 0 uses :data:`DEFAULT_SCRIPT`, other seeds draw a random script.
    """
    if seed == 0:
        script = DEFAULT_SCRIPT
    else:
        rng = random.Random(seed)
        script = tuple(rng.choice(("coin", "push", "idle")) for _ in range(16))

    has_credit = ConditionDef("coins_positive", lambda s: s.coins > 0, "a coin has been credited")

    def insert_coin(s):
        s.coins += 1

    def push(s):
        s.coins -= 1
        s.passages += 1

    def step(s):
        event = s.script[s.tick % len(s.script)]
        if event == "coin":
            insert_coin(s)
        elif event == "push" and s.coins > 0:
            push(s)
        s.tick += 1

    return SystemModel(
        name="turnstile",
        init=lambda _seed: TurnstileState(script=script),
        main_step=step,
        actions={
            "insert_coin": ActionDef("insert_coin", insert_coin, modifies={"coins"}),
            "push": ActionDef("push", push, guard=has_credit, modifies={"coins", "passages"}),
        },
        conditions={
            "coins_positive": has_credit,
            "locked": ConditionDef("locked", lambda s: s.coins == 0, "the turnstile is locked"),
        },
        queries={
            "coins": QueryDef("coins", lambda s: s.coins, "the credited coins"),
            "passages": QueryDef("passages", lambda s: s.passages),
        },
        regions=lambda s: {
            "coins": str(s.coins),
            "passages": str(s.passages),
            "clock": f"{s.tick}/{','.join(s.script)}",
        },
        description="coin-operated turnstile driven by a scripted event sequence",
    )


YEAR_LENGTH = 365


@dataclass
class CalendarState:
    day: int
    equinoxes: frozenset


def equinox_days(seed: int, count: int = 2) -> frozenset:
    """Equinox days near 79 and 265 jittered by ``seed``; a third lands near 172."""
    rng = random.Random(seed)
    days = [79 + rng.randint(-2, 2), 265 + rng.randint(-2, 2)]
    if count >= 3:
        days.insert(1, 172 + rng.randint(-2, 2))
    return frozenset(days[:count] if count < 3 else days)


def calendar_model(seed: int = 0, equinox_count: int = 2, name: str | None = None) -> SystemModel:
    """One year of days; ``main_step`` advances a day and stays on the last one.

    ``year_beginning`` holds on day 0, ``year_end`` on day 364 and ``equinox``
    on the table of equinox days.  Staying on the last day keeps every
    condition defined when a run is longer than the year.
    """
    table = equinox_days(seed, equinox_count)

    def step(s):
        if s.day < YEAR_LENGTH - 1:
            s.day += 1

    return SystemModel(
        name=name or ("calendar" if equinox_count == 2 else f"calendar_{equinox_count}eq"),
        init=lambda _seed: CalendarState(0, table),
        main_step=step,
        conditions={
            "equinox": ConditionDef("equinox", lambda s: s.day in s.equinoxes, "it is an equinox day"),
            "year_beginning": ConditionDef("year_beginning", lambda s: s.day == 0, "the year begins"),
            "year_end": ConditionDef("year_end", lambda s: s.day == YEAR_LENGTH - 1, "the year ends"),
        },
        queries={"day": QueryDef("day", lambda s: s.day, "the day of the year")},
        regions=lambda s: {"day": str(s.day), "equinoxes": ",".join(map(str, sorted(s.equinoxes)))},
        description=f"day-stepping calendar with equinoxes on days {sorted(table)}",
    )


SIGNAL_NAMES = ("p", "q", "r", "s", "t")


@dataclass
class SignalState:
    tick: int
    table: tuple  # one frozenset of raised signals per tick


def signals_model(seed: int = 0, length: int = 64, density: float = 0.3) -> SystemModel:
    """Five boolean signals replayed from a seeded table; the last row repeats.

    A neutral system for exercising every template: conditions ``p`` .. ``t``,
    an ``advance`` action (the same move as ``main_step``) and a
    ``countdown`` query giving the number of rows left.
    """
    rng = random.Random(seed)
    table = tuple(frozenset(n for n in SIGNAL_NAMES if rng.random() < density) for _ in range(length))

    def advance(s):
        if s.tick < len(s.table) - 1:
            s.tick += 1

    conditions = {
        n: ConditionDef(n, lambda s, n=n: n in s.table[s.tick], f"signal {n} is raised") for n in SIGNAL_NAMES
    }
    return SystemModel(
        name="signals",
        init=lambda _seed: SignalState(0, table),
        main_step=advance,
        actions={"advance": ActionDef("advance", advance, modifies={"tick"})},
        conditions=conditions,
        queries={"countdown": QueryDef("countdown", lambda s: len(s.table) - 1 - s.tick, "rows left")},
        regions=lambda s: {"tick": str(s.tick)},
        clone=lambda s: SignalState(s.tick, s.table),
        description="seeded table of five boolean signals",
    )
