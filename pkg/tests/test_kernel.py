from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specdrivers.errors import GuardError, ModelMismatchError, ResolutionError
from specdrivers.examples import build_fixture
from specdrivers.kernel import (
    ActionDef,
    ConditionDef,
    Outcome,
    StateRef,
    SystemModel,
    Trace,
    Verdict,
    apply_action,
    canonical,
    check_equivalence,
    clone_state,
    eval_condition,
    generate_trace,
)


def counter_model(limit=3):
    positive = ConditionDef("positive", lambda s: s["n"] > 0)

    def inc(s):
        s["n"] += 1

    def dec(s):
        s["n"] -= 1

    return SystemModel(
        name="counter",
        init=lambda seed: {"n": seed},
        main_step=lambda s: inc(s) if s["n"] < limit else None,
        actions={"inc": ActionDef("inc", inc), "dec": ActionDef("dec", dec, guard=positive)},
        conditions={"positive": positive, "at_limit": ConditionDef("at_limit", lambda s: s["n"] == limit)},
    )


class TestCanonical:
    def test_sets_are_order_free(self):
        assert canonical({3, 1, 2}) == canonical({2, 3, 1})

    def test_dict_keys_sorted(self):
        assert canonical({"b": 1, "a": 2}) == canonical({"a": 2, "b": 1})

    def test_list_and_tuple_differ(self):
        assert canonical([1, 2]) != canonical((1, 2))

    @given(st.lists(st.integers()))
    def test_equal_values_equal_text(self, xs):
        assert canonical(list(xs)) == canonical(list(xs))


class TestActions:
    def test_turnstile_coin_increments(self):
        m = build_fixture("turnstile")
        s = m.start()
        before = s.value.coins
        after = apply_action("insert_coin", s)
        assert after.value.coins == before + 1

    def test_guard_raises_instead_of_skipping(self):
        m = counter_model()
        with pytest.raises(GuardError) as info:
            apply_action("dec", m.start(0))
        assert info.value.action_id == "dec"

    def test_unknown_action(self):
        with pytest.raises(ResolutionError):
            apply_action("jump", counter_model().start(0))

    def test_foreign_action_object_rejected(self):
        stray = ActionDef("stray", lambda s: s)
        with pytest.raises(ResolutionError):
            apply_action(stray, counter_model().start(0))

    def test_creator_ignores_state(self):
        make = ActionDef("make", lambda x: [x], creates=True)
        assert make.invoke(None, 4) == [4]


class TestConditions:
    def test_eval_by_id(self):
        m = counter_model()
        assert eval_condition("positive", m.start(2))
        assert not eval_condition("positive", m.start(0))

    def test_unknown_condition(self):
        with pytest.raises(ResolutionError):
            eval_condition("negative", counter_model().start(0))

    def test_phrase_falls_back_to_id(self):
        assert ConditionDef("x", bool).phrase == "x"
        assert ConditionDef("x", bool, "x is set").phrase == "x is set"


class TestStates:
    def test_clone_is_independent(self):
        m = counter_model()
        a = m.start(1)
        b = clone_state(a)
        apply_action("inc", b)
        assert a.value["n"] == 1 and b.value["n"] == 2

    def test_equivalence_across_models_rejected(self):
        a, b = counter_model().start(0), counter_model().start(0)
        with pytest.raises(ModelMismatchError):
            check_equivalence(a.model.equivalence(), a, b)

    def test_serialize_is_stable(self):
        m = build_fixture("calendar")
        assert m.serialize(m.init(0)) == m.serialize(m.init(0))


class TestGenerateTrace:
    def test_length_is_bound_plus_one(self):
        m = counter_model()
        t = generate_trace(m, m.start(0), 5, ["positive", "at_limit"])
        assert len(t) == 6
        assert [t.holds("at_limit", i) for i in range(6)] == [False, False, False, True, True, True]

    def test_does_not_touch_initial_state(self):
        m = counter_model()
        s0 = m.start(0)
        generate_trace(m, s0, 3, ["positive"])
        assert s0.value == {"n": 0}

    def test_negative_bound(self):
        m = counter_model()
        with pytest.raises(ValueError):
            generate_trace(m, m.start(0), -1, ["positive"])

    def test_state_of_other_model(self):
        with pytest.raises(ModelMismatchError):
            generate_trace(counter_model(), counter_model().start(0), 1, ["positive"])


class TestTrace:
    @given(st.lists(st.sets(st.sampled_from("abc")), min_size=1, max_size=12))
    def test_json_round_trip(self, steps):
        t = Trace.from_sets("abc", steps)
        assert Trace.from_json(t.to_json()) == t

    def test_limit_keeps_full_length(self):
        t = Trace.from_sets("a", [{"a"}] * 10)
        data = t.to_json(limit=3)
        assert len(data["steps"]) == 3 and data["length"] == 10

    def test_from_valuations(self):
        t = Trace.from_valuations([{"a": True, "b": False}, {"a": False, "b": True}])
        assert t.valuation(1) == {"a": False, "b": True}


class TestVerdict:
    def test_failures_need_witness(self):
        with pytest.raises(ValueError):
            Verdict(Outcome.VIOLATED, "no witness")
        with pytest.raises(ValueError):
            Verdict(Outcome.BOUND_EXHAUSTED, "no witness")

    def test_severity_order(self):
        order = sorted(Outcome, key=lambda o: o.severity)
        assert order == [Outcome.PRECONDITION_UNMET, Outcome.HOLDS, Outcome.BOUND_EXHAUSTED, Outcome.VIOLATED]

    def test_witness_pair(self):
        t = Trace.from_sets("a", [set()])
        v = Verdict(Outcome.VIOLATED, "x", trace=t, step=0)
        assert v.witness == (t, 0) and not v.holds
