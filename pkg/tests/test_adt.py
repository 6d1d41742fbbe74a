from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from specdrivers.adt import (
    AxiomDriver,
    Call,
    DriverSuite,
    InputGenerator,
    Param,
    Snapshot,
    aliasing_self_copy_driver,
    build_queue_with_append_suite,
    build_stack_suite,
    build_tree_inord_suite,
    check_driver,
    check_suite,
    contract_divergence_probe,
    drain,
    frame_check,
    run_driver,
    well_definedness_driver,
)
from specdrivers.errors import ConfigError
from specdrivers.examples import build_fixture
from specdrivers.examples import contracts as C
from specdrivers.examples.containers import bag_model, bag_twins, stack_of
from specdrivers.kernel import ActionDef, EquivalenceDef, Outcome

EQ = EquivalenceDef("eq", lambda a, b: a == b)


def counter_suite(inc=lambda c: c + 1):
    binding = {"inc": ActionDef("inc", inc)}
    d = AxiomDriver(
        name="inc_grows",
        params=(Param("c"),),
        pre=lambda env: env["c"] >= 0,
        body=(Snapshot("c", "old"), Call("inc", "c")),
        modifies={"c"},
        post=lambda env: env["c"] == env["old"] + 1,
        generator=InputGenerator(lambda rng, size: {"c": rng.randint(-size, size)}),
    )
    return DriverSuite("counter", (d,), binding, EQ), d


@pytest.fixture(scope="module")
def stack():
    return build_fixture("stack")


@pytest.fixture(scope="module")
def stack_suite(stack):
    return build_stack_suite(stack.binding(), stack.equivalence())


class TestDriverShape:
    def test_mutation_outside_modifies_rejected(self):
        with pytest.raises(ValueError):
            AxiomDriver("d", (Param("a"), Param("b")), lambda e: True, (Call("inc", "b"),), {"a"}, lambda e: True)

    def test_query_call_is_not_a_mutation(self):
        AxiomDriver("d", (Param("a"),), lambda e: True, (Call("count", "a", out="n"),), set(), lambda e: True)

    def test_unbound_operation(self):
        _, d = counter_suite()
        with pytest.raises(ConfigError) as info:
            DriverSuite("x", (d,), {}, EQ)
        assert info.value.problems == ("inc",)

    def test_inputs_must_match_slots(self):
        suite, d = counter_suite()
        with pytest.raises(ValueError):
            run_driver(d, suite, {"c": 1, "z": 2})


class TestRunDriver:
    def test_precondition_unmet(self):
        suite, d = counter_suite()
        assert run_driver(d, suite, {"c": -1}).outcome is Outcome.PRECONDITION_UNMET

    def test_post_violation_keeps_inputs(self):
        suite, d = counter_suite(inc=lambda c: c + 2)
        v = run_driver(d, suite, {"c": 3})
        assert v.outcome is Outcome.VIOLATED and v.tag == "post" and v.inputs == {"c": "3"}

    def test_crash_is_violation(self):
        suite, d = counter_suite(inc=lambda c: 1 // 0)
        assert run_driver(d, suite, {"c": 0}).tag == "crash"

    def test_inputs_not_mutated(self, stack, stack_suite):
        s = stack_of(stack, [1, 2])
        run_driver(stack_suite.driver("push_increments_count"), stack_suite, {"s": s, "x": 5})
        assert s.items == [1, 2]

    def test_guard_failure(self, stack, stack_suite):
        d = AxiomDriver("pop_anything", (Param("s"),), lambda env: True, (Call("pop", "s"),), {"s"}, lambda env: True)
        v = run_driver(d, stack_suite, {"s": stack_of(stack, [])})
        assert v.outcome is Outcome.VIOLATED and v.tag == "guard"


class TestCheckDriver:
    def test_holds_with_resample_stats(self):
        suite, d = counter_suite()
        v = check_driver(d, suite, seed=1, samples=200)
        assert v.holds
        assert v.details["samples_run"] == 200
        assert 0.0 < v.details["resample_rate"] < 1.0

    def test_violation_is_shrunk(self):
        suite, d = counter_suite(inc=lambda c: c if c > 2 else c + 1)
        v = check_driver(d, suite, seed=0, samples=500)
        assert v.outcome is Outcome.VIOLATED
        assert v.details["size"] <= 8

    def test_precondition_never_met(self):
        suite, d = counter_suite()
        gen = InputGenerator(lambda rng, size: {"c": -1 - size})
        v = check_driver(d, suite, samples=5, retry_budget=3, generator=gen)
        assert v.outcome is Outcome.PRECONDITION_UNMET
        assert v.details["starved"] == 5

    def test_deterministic(self, stack_suite):
        d = stack_suite.driver("push_then_pop")
        assert check_driver(d, stack_suite, 4, 100).details == check_driver(d, stack_suite, 4, 100).details

    @given(st.integers(0, 2**32))
    def test_generator_seeded(self, seed):
        gen = InputGenerator(lambda rng, size: {"x": [rng.random() for _ in range(size)]})
        assert gen.produce(seed, 3) == gen.produce(seed, 3)


class TestStackSuite:
    def test_reference_holds(self, stack_suite):
        verdicts = check_suite(stack_suite, seed=2, samples=150)
        assert all(v.holds for v in verdicts.values()), {k: v.message for k, v in verdicts.items() if not v.holds}

    def test_observer_constructor_coverage(self, stack_suite):
        assert stack_suite.required_pairs() <= stack_suite.covered_pairs()

    @pytest.mark.parametrize(
        "mutant,driver",
        [
            ("pop_noop", "push_then_pop"),
            ("top_bottom", "top_after_push"),
            ("count_stale", "pop_decrements_count"),
            ("pop_bottom", "top_after_pop"),
            ("push_bumps_shared", "push_then_pop"),
        ],
    )
    def test_mutant_caught_by(self, mutant, driver):
        m = build_fixture(f"stack.{mutant}")
        suite = build_stack_suite(m.binding(), m.equivalence())
        assert check_driver(suite.driver(driver), suite, 0, 300).outcome is Outcome.VIOLATED

    def test_shared_counter_is_a_frame_violation(self):
        m = build_fixture("stack.push_bumps_shared")
        suite = build_stack_suite(m.binding(), m.equivalence())
        v = check_driver(suite.driver("push_then_pop"), suite, 0, 300)
        assert v.tag == "frame"

    def test_missing_operation(self, stack):
        binding = dict(stack.binding())
        del binding["top"]
        with pytest.raises(ConfigError):
            build_stack_suite(binding)


class TestQueueAndTree:
    def test_queue_reference_holds(self):
        m = build_fixture("queue")
        suite = build_queue_with_append_suite(m.binding(), m.equivalence())
        assert all(v.holds for v in check_suite(suite, 3, 100).values())

    def test_drain(self):
        m = build_fixture("queue")
        q = m.action("new").invoke(None)
        for x in (3, 1, 2):
            m.action("put").invoke(q, x)
        assert drain(m.binding(), q) == [3, 1, 2]

    def test_tree_needs_queue_suite(self):
        t = build_fixture("tree")
        with pytest.raises(ConfigError):
            build_tree_inord_suite(t.binding(), None)
        s = build_fixture("stack")
        with pytest.raises(ConfigError):
            build_tree_inord_suite(t.binding(), build_stack_suite(s.binding()))

    def test_tree_reference_holds(self):
        q, t = build_fixture("queue"), build_fixture("tree")
        qs = build_queue_with_append_suite(q.binding(), q.equivalence())
        suite = build_tree_inord_suite(t.binding(), qs, t.equivalence())
        assert all(v.holds for v in check_suite(suite, 5, 100).values())


class TestFrameCheck:
    def test_no_op_with_empty_modifies(self):
        v = frame_check(ActionDef("noop", lambda a: None, modifies=()), ["a"], {"a": [1]}, "a")
        assert v.holds

    def test_empty_modifies_forbids_target_change(self):
        v = frame_check(ActionDef("grow", lambda a: a.append(1), modifies=()), ["a"], {"a": []}, "a")
        assert v.outcome is Outcome.VIOLATED

    def test_shared_counter_mutant(self):
        m = build_fixture("stack.push_bumps_shared")
        s1 = stack_of(m, [1])
        s2 = stack_of(m, [2])
        v = frame_check(m.action("push"), ["s_1", "s_2"], {"s_1": s1, "s_2": s2}, "s_1", [9])
        assert v.outcome is Outcome.VIOLATED and v.details["changed"] == ["s_2"]

    def test_in_frame(self, stack):
        s, other = stack_of(stack, [1]), stack_of(stack, [2])
        v = frame_check(stack.action("push"), ["s", "other"], {"s": s, "other": other}, "s", [9])
        assert v.holds

    def test_out_of_frame(self):
        def leaky(a, b):
            b.append(0)
            a.append(1)

        op = ActionDef("leaky", leaky)
        v = frame_check(op, ["a", "b"], {"a": [], "b": []}, "a", ["b"])
        assert v.outcome is Outcome.VIOLATED and v.details["changed"] == ["b"]


class TestWellDefinedness:
    def test_bag_removal_depends_on_representation(self):
        m = bag_model()
        gen = InputGenerator(bag_twins)
        seq = m.equivalence("sequence")
        d = well_definedness_driver(m.action("remove_any"), seq, gen)
        suite = DriverSuite("bag", (d,), m.binding(), seq)
        assert check_driver(d, suite, 0, 200).outcome is Outcome.VIOLATED

    def test_bag_removal_well_defined_as_multiset(self):
        m = bag_model()
        bag = m.equivalence("multiset")
        d = well_definedness_driver(m.action("remove_any"), bag, InputGenerator(bag_twins))
        suite = DriverSuite("bag", (d,), m.binding(), bag)
        v = check_driver(d, suite, 0, 200)
        assert v.outcome in (Outcome.HOLDS, Outcome.VIOLATED)
        assert v.tag != "post"

    def test_self_copy(self):
        def wipe_copy(a, b):
            a.clear()
            a.extend(b)

        op = ActionDef("copy", wipe_copy)
        d = aliasing_self_copy_driver(op, EQ, InputGenerator(lambda rng, n: {"x": list(range(n))}))
        suite = DriverSuite("list", (d,), {"copy": op}, EQ)
        assert check_driver(d, suite, 0, 50).outcome is Outcome.VIOLATED


class TestContractDivergence:
    def test_square_divergence(self):
        v = contract_divergence_probe(C.square_mul, C.square_zero, C.non_negative_result, C.integer_inputs, C.same_value)
        assert v.tag == "divergence" and v.details["sample"] < 100

    def test_identical_implementations(self):
        v = contract_divergence_probe(C.square_mul, C.square_mul, C.non_negative_result, C.integer_inputs, C.same_value)
        assert v.holds and v.details == {"budget": 100}

    def test_contract_breach(self):
        neg = ActionDef("neg", lambda x: -abs(x) - 1, creates=True)
        v = contract_divergence_probe(C.square_mul, neg, C.non_negative_result, C.integer_inputs, C.same_value)
        assert v.tag == "contract"

    def test_sorts(self):
        v = contract_divergence_probe(
            C.stable_sort, C.unstable_sort, C.sorted_permutation, C.record_lists, C.same_sequence, seed=3
        )
        assert v.outcome is Outcome.VIOLATED


class TestWellDefinednessSymmetry:
    @given(st.integers(0, 10_000))
    def test_swapping_twins_keeps_verdict(self, seed):
        m = bag_model()
        seq = m.equivalence("sequence")

        def swapped(rng, size):
            t = bag_twins(rng, size)
            return {"s1": t["s2"], "s2": t["s1"]}

        verdicts = []
        for fn in (bag_twins, swapped):
            d = well_definedness_driver(m.action("remove_any"), seq, InputGenerator(fn))
            suite = DriverSuite("bag", (d,), m.binding(), seq)
            verdicts.append(run_driver(d, suite, InputGenerator(fn).produce(seed, 4)).outcome)
        assert verdicts[0] == verdicts[1]
