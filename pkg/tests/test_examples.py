from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specdrivers.adt import aliasing_self_copy_driver, check_driver, DriverSuite, InputGenerator
from specdrivers.errors import GuardError, ResolutionError
from specdrivers.examples import (
    FAULTY_VARIANTS,
    FIXTURES,
    QUEUE_MUTANTS,
    STACK_MUTANTS,
    TREE_MUTANTS,
    VARIANT_NAMES,
    build_fixture,
    check_variant,
    flawed_container_library,
    in_order,
)
from specdrivers.examples.systems import DEFAULT_SCRIPT, YEAR_LENGTH, equinox_days
from specdrivers.kernel import Outcome, canonical, generate_trace

STATEFUL = [n for n in FIXTURES if any(not a.creates for a in build_fixture(n).actions.values())]


def _arg(model, kind, rng, nested):
    if kind == "value":
        return rng.randint(-5, 5)
    # instance arguments are built from value-only actions to keep nesting finite
    return _random_state(model, rng, 0 if nested else 3, nested=True)


def _random_state(model, rng, steps, nested=False):
    new = next((a for a in model.actions.values() if a.creates and not a.arg_kinds), None)
    state = new.invoke(None) if new is not None else model.init(rng.randrange(4))
    for _ in range(steps):
        state = _step(model, state, rng, nested)[0]
    return state


def _step(model, state, rng, nested=False):
    acts = [a for a in model.actions.values() if not a.creates]
    act = rng.choice(acts)
    args = [_arg(model, k, rng, nested) for k in act.arg_kinds]
    try:
        result = act.invoke(state, *args)
    except GuardError:
        return state, act, False, args
    return (state if result is None else result), act, True, args


def _behaviour(model, seed, steps=8):
    """Serialized states and observations along a seeded random action sequence."""
    rng = random.Random(seed)
    state = _random_state(model, rng, 0)
    out = []
    for _ in range(steps):
        state, act, applied, args = _step(model, state, rng)
        out.append((act.id, applied, model.serialize(state), canonical(args), _observations(model, state)))
    return out


def _observations(model, state):
    obs = {}
    for q in list(model.queries.values()) + list(model.conditions.values()):
        try:
            obs[q.id] = canonical(q.eval(state))
        except Exception as exc:  # observers may refuse some states (e.g. top of an empty stack)
            obs[q.id] = type(exc).__name__
    return obs


def _random_tree(model, rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return model.action("leaf").invoke(None)
    return model.action("node").invoke(None, _random_tree(model, rng, depth - 1), rng.randint(0, 9),
                                       _random_tree(model, rng, depth - 1))


class TestRegistry:
    def test_required_names(self):
        for name in ("stack", "turnstile", "calendar", "array2_correct", "array2_wipe_on_alias",
                     "linked_queue_alias_bug"):
            assert name in FIXTURES

    def test_enough_mutants(self):
        assert len(STACK_MUTANTS) >= 5 and len(QUEUE_MUTANTS) >= 5 and len(TREE_MUTANTS) >= 5

    def test_unknown(self):
        with pytest.raises(ResolutionError):
            build_fixture("heap")

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_deterministic_for_seed(self, name):
        a, b = build_fixture(name, 5), build_fixture(name, 5)
        assert a.serialize(a.init(5)) == b.serialize(b.init(5))


class TestFixtureInvariants:
    @pytest.mark.parametrize("name", STATEFUL)
    def test_frame_soundness(self, name):
        m = build_fixture(name)
        rng = random.Random(name)
        for _ in range(60):
            state = _random_state(m, rng, rng.randrange(5))
            before = dict(m.regions(state))
            after_state, act, applied, _ = _step(m, m.clone(state), rng)
            if not applied or "self" in act.modifies:
                continue
            after = dict(m.regions(after_state))
            changed = {r for r in before if before[r] != after[r]}
            if name == "stack.push_bumps_shared" and act.id == "push":
                assert changed <= act.modifies | {"shared"}
                continue
            assert changed <= act.modifies, (act.id, changed)

    def test_shared_counter_mutant_breaks_frame(self):
        m = build_fixture("stack.push_bumps_shared")
        s = m.action("new").invoke(None)
        before = m.regions(s)["shared"]
        m.action("push").invoke(s, 1)
        assert m.regions(s)["shared"] != before

    @pytest.mark.parametrize("name", STATEFUL)
    def test_clone_independence(self, name):
        m = build_fixture(name)
        rng = random.Random(f"clone/{name}")
        for _ in range(20):
            original = _random_state(m, rng, 3)
            snapshot = _observations(m, original)
            copy = m.clone(original)
            for _ in range(rng.randint(1, 20)):
                copy = _step(m, copy, rng)[0]
            assert _observations(m, original) == snapshot

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_condition_purity(self, name):
        m = build_fixture(name)
        s = m.init(0)
        first = {c: d.eval(s) for c, d in m.conditions.items()}
        assert first == {c: d.eval(s) for c, d in m.conditions.items()}


class TestMutantDistinctness:
    @pytest.mark.parametrize("mutant", [f"stack.{m}" for m in STACK_MUTANTS] + [f"queue.{m}" for m in QUEUE_MUTANTS])
    def test_container_mutants_differ(self, mutant):
        ref = build_fixture(mutant.split(".")[0])
        mut = build_fixture(mutant)
        assert any(_behaviour(ref, seed) != _behaviour(mut, seed) for seed in range(200))

    @pytest.mark.parametrize("mutant", [f"tree.{m}" for m in TREE_MUTANTS])
    def test_tree_mutants_differ(self, mutant):
        ref, mut = build_fixture("tree"), build_fixture(mutant)
        for seed in range(200):
            t_ref = _random_tree(ref, random.Random(seed), 3)
            t_mut = _random_tree(mut, random.Random(seed), 3)
            if ref.serialize(t_ref) != mut.serialize(t_mut) or _observations(ref, t_ref) != _observations(mut, t_mut):
                return
        pytest.fail(f"{mutant} indistinguishable from the reference")


class TestTurnstile:
    def test_coins_hand_stepped(self):
        m = build_fixture("turnstile")
        t = generate_trace(m, m.start(), 5, ["coins_positive"])
        # script: coin, push, idle, coin, coin, push
        assert DEFAULT_SCRIPT[:5] == ("coin", "push", "idle", "coin", "coin")
        assert [t.holds("coins_positive", i) for i in range(6)] == [False, True, False, False, True, True]

    def test_zero_bound(self):
        m = build_fixture("turnstile")
        assert len(generate_trace(m, m.start(), 0, ["locked"])) == 1

    def test_other_seeds_draw_scripts(self):
        assert build_fixture("turnstile", 3).init(0).script != DEFAULT_SCRIPT


class TestCalendar:
    @given(st.integers(0, 10_000))
    def test_two_equinoxes(self, seed):
        days = equinox_days(seed)
        assert len(days) == 2 and all(0 < d < YEAR_LENGTH - 1 for d in days)

    @given(st.integers(0, 10_000))
    def test_three_equinoxes(self, seed):
        assert len(equinox_days(seed, 3)) == 3

    def test_year_stutters_on_last_day(self):
        m = build_fixture("calendar")
        t = generate_trace(m, m.start(), 400, ["year_end"])
        assert all(t.holds("year_end", i) for i in range(364, 401))
        assert not t.holds("year_end", 363)

    def test_equinox_count_on_trace(self):
        m = build_fixture("calendar_3eq")
        t = generate_trace(m, m.start(), 365, ["equinox"])
        assert sum(t.holds("equinox", i) for i in range(len(t))) == 3


class TestTrees:
    def test_in_order(self):
        m = build_fixture("tree")
        leaf = m.action("leaf").invoke(None)
        node = m.action("node")
        t = node.invoke(None, node.invoke(None, leaf, 1, leaf), 2, node.invoke(None, leaf, 3, leaf))
        assert in_order(t) == [1, 2, 3]
        assert m.query("in_ord").eval(t).items == [1, 2, 3]

    def test_leaf_has_no_children(self):
        m = build_fixture("tree")
        with pytest.raises(IndexError):
            m.query("left").eval(m.action("leaf").invoke(None))


class TestFlawedLibrary:
    def test_sizes(self):
        lib = flawed_container_library(0)
        assert len(lib) == 17 == len(VARIANT_NAMES)
        assert len(FAULTY_VARIANTS) == 6
        assert list(lib) == sorted(lib)

    @pytest.mark.parametrize("name", VARIANT_NAMES)
    def test_each_variant(self, name):
        variant, _ = flawed_container_library(0)[name]
        v = check_variant(variant, seed=4, samples=150)
        if name in FAULTY_VARIANTS:
            assert v.outcome is Outcome.VIOLATED
        else:
            assert v.holds

    @pytest.mark.parametrize("name,faulty", [("array2_correct", False), ("array2_wipe_on_alias", True),
                                             ("linked_queue", False), ("linked_queue_alias_bug", True)])
    def test_self_alias_fixtures(self, name, faulty):
        m = build_fixture(name)
        eq = m.equivalence()
        gen = InputGenerator(lambda rng, size: {"x": m.init(rng.randrange(1000))})
        d = aliasing_self_copy_driver(m.action("copy_"), eq, gen)
        v = check_driver(d, DriverSuite(name, (d,), m.binding(), eq), 0, 100)
        assert (v.outcome is Outcome.VIOLATED) == faulty
