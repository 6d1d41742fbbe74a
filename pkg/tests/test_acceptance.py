"""Acceptance checks; each test prints one PASS/FAIL line with its tolerance."""

from __future__ import annotations

import random
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import all_traces, bounded_existence_between, bounded_existence_between_masks
from specdrivers.adt import check_suite, contract_divergence_probe
from specdrivers.engine import adt_suite_for, parse_suite_text
from specdrivers.examples import build_fixture
from specdrivers.examples import contracts as C
from specdrivers.examples.containers import QUEUE_MUTANTS, STACK_MUTANTS, TREE_MUTANTS, stack_of
from specdrivers.examples.flawed import FAULTY_VARIANTS, VARIANT_NAMES, flawed_container_library, variant_suite
from specdrivers.kernel import Outcome, StateRef, Trace
from specdrivers.temporal import (
    Always,
    And,
    Atom,
    Eventually,
    Implies,
    Not,
    Or,
    Pattern,
    Scope,
    Until,
    check_requirement,
    get_template,
    instantiate_template,
    ltl_eval,
    monitor,
    pattern_to_ltl,
    required_slots,
    supported_pairs,
    template_catalog,
    verify_stimulus_response,
)
from specdrivers.temporal.batch import enumerate_traces, evaluate_batch

C1_RUNTIME_LIMIT_S = 120.0
C1_SAMPLED_TRACES = 10_000
C1_SAMPLED_MAX_LEN = 8
C2_MAX_LEN = 7
C2_PURE_MAX_LEN = 5
C3_MAX_N = 100
C4_SEEDS = (0, 1, 2)
C4_SAMPLES = 1000
C5_SAMPLES = 1000
C6_BUDGET = 100
C7_BOUND = 366
C8_MAX_LINES = 6
C9_SEED = 7


def _report(criterion: int, ok: bool, text: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {text}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)


class TestPatternOracleEquivalence:
    """Segment monitor and LTL compilation agree on every supported pair."""

    def test_criterion_1(self):
        start = time.perf_counter()
        disagreements = []
        exhaustive = sampled = 0
        pairs = supported_pairs()
        for p, sc in pairs:
            need = required_slots(p, sc)
            if len(need) <= 2:
                atoms = ("a", "b")
                slots = dict(zip(need, atoms))
                traces = all_traces(atoms, 6)
            else:
                atoms = tuple("abcde"[: len(need)])
                slots = dict(zip(need, atoms))
                rng = random.Random(f"c1/{p.label}/{sc.value}")
                traces = (
                    Trace(
                        atoms,
                        tuple(
                            frozenset(a for a in atoms if rng.random() < 0.4)
                            for _ in range(rng.randint(1, C1_SAMPLED_MAX_LEN))
                        ),
                    )
                    for _ in range(C1_SAMPLED_TRACES)
                )
            f = pattern_to_ltl(p, sc, slots)
            for t in traces:
                routed = monitor(p, sc, slots, t).outcome is Outcome.HOLDS
                if routed != ltl_eval(f, t):
                    disagreements.append((p.label, sc.value, t))
                if len(need) <= 2:
                    exhaustive += 1
                else:
                    sampled += 1
        elapsed = time.perf_counter() - start
        ok = not disagreements and elapsed < C1_RUNTIME_LIMIT_S
        _report(
            1,
            ok,
            f"{len(pairs)} pairs, {exhaustive} exhaustive + {sampled} seeded traces, "
            f"{len(disagreements)} disagreements (tolerance 0), {elapsed:.1f} s (limit {C1_RUNTIME_LIMIT_S:.0f} s)",
        )
        assert not disagreements, disagreements[:3]
        assert elapsed < C1_RUNTIME_LIMIT_S


def _reference_bounded_existence_between():
    P, Q, R = Atom("P"), Atom("Q"), Atom("R")
    nP, nR = Not(P), Not(R)
    inner = Until(And(P, nR), Or(R, Until(nP, R)))
    inner = Until(And(nP, nR), Or(R, inner))
    inner = Until(And(P, nR), Or(R, inner))
    body = Until(And(nP, nR), Or(R, inner))
    return Always(Implies(And(Q, Eventually(R)), body))


class TestBoundedExistenceFidelity:
    """The k=2 compilation is the published nesting; every k matches episode counting."""

    def test_criterion_2(self):
        slots = {"P": "P", "Q": "Q", "R": "R"}
        structural = pattern_to_ltl(Pattern.bounded_existence(2), Scope.BETWEEN_Q_AND_R, slots)
        same_structure = structural == _reference_bounded_existence_between()
        atoms = ("P", "Q", "R")
        mismatches = {}
        total = 0
        for k in (1, 2, 3):
            f = pattern_to_ltl(Pattern.bounded_existence(k), Scope.BETWEEN_Q_AND_R, slots)
            bad = 0
            for n in range(1, C2_MAX_LEN + 1):
                masks, lengths = enumerate_traces(3, n)
                got = evaluate_batch(f, masks, lengths, atoms)
                bad += int(np.count_nonzero(got != bounded_existence_between_masks(masks, lengths, k)))
                total += len(masks)
            # the recursive evaluator itself on the shorter traces
            for t in all_traces(atoms, C2_PURE_MAX_LEN):
                if ltl_eval(f, t) != bounded_existence_between(t, k):
                    bad += 1
            mismatches[k] = bad
        ok = same_structure and not any(mismatches.values())
        _report(
            2,
            ok,
            f"structure equal={same_structure}; mismatches per k {mismatches} over {total} traces "
            f"(lengths 1..{C2_MAX_LEN}, tolerance 0)",
        )
        assert same_structure
        assert not any(mismatches.values())


class TestStimulusResponseBound:
    """Popping a stack of n elements empties it in exactly n iterations."""

    def test_criterion_3(self):
        m = build_fixture("stack")
        req = instantiate_template(
            get_template("STIMULUS_RESPONSE"),
            m,
            {"stimulus": "not_is_empty", "response": "is_empty", "action": "pop", "timer": "count"},
            "POPPING_EMPTIES_STACK",
        )
        failures = []
        for n in range(C3_MAX_N + 1):
            s0 = StateRef(m, stack_of(m, range(n)))
            v = verify_stimulus_response(req, s0)
            variant = v.details.get("variant")
            if not (v.outcome is Outcome.HOLDS and v.iterations == n and v.iterations <= variant):
                failures.append((n, v.outcome.value, v.iterations, variant))
        _report(3, not failures, f"n=0..{C3_MAX_N}: {len(failures)} runs off 'Holds in exactly n <= variant'")
        assert not failures, failures[:5]


class TestFlawedContainerAnalog:
    """Aliasing and well-definedness drivers flag exactly the seeded variants."""

    def test_criterion_4(self):
        summary = {}
        ok = True
        for seed in C4_SEEDS:
            flagged = set()
            for name, (variant, model) in flawed_container_library(seed).items():
                verdicts = check_suite(variant_suite(variant, model), seed, C4_SAMPLES)
                if any(v.outcome is Outcome.VIOLATED for v in verdicts.values()):
                    flagged.add(name)
            summary[seed] = len(flagged)
            ok &= flagged == set(FAULTY_VARIANTS)
        ok &= len(VARIANT_NAMES) == 17 and len(FAULTY_VARIANTS) == 6
        _report(
            4,
            ok,
            f"flagged per seed {summary} of {len(VARIANT_NAMES)} variants; expected exactly the 6 seeded, "
            f"{C4_SAMPLES} samples per driver",
        )
        assert ok


class TestAdtSuites:
    """Reference fixtures pass every driver; every shipped mutant is caught."""

    def test_criterion_5(self):
        queue_ref = build_fixture("queue")
        failing_refs = []
        for kind, fixture in (("stack", "stack"), ("queue_with_append", "queue"), ("tree_with_in_order", "tree")):
            suite = adt_suite_for(kind, build_fixture(fixture), queue_ref)
            for name, v in check_suite(suite, 0, C5_SAMPLES).items():
                if v.outcome is not Outcome.HOLDS:
                    failing_refs.append(f"{fixture}:{name}")
        survivors = []
        for kind, prefix, mutants in (
            ("stack", "stack", STACK_MUTANTS),
            ("queue_with_append", "queue", QUEUE_MUTANTS),
            ("tree_with_in_order", "tree", TREE_MUTANTS),
        ):
            assert len(mutants) >= 5
            for mu in mutants:
                suite = adt_suite_for(kind, build_fixture(f"{prefix}.{mu}"), queue_ref)
                if not any(v.outcome is Outcome.VIOLATED for v in check_suite(suite, 0, C5_SAMPLES).values()):
                    survivors.append(f"{prefix}.{mu}")
        n_mutants = len(STACK_MUTANTS) + len(QUEUE_MUTANTS) + len(TREE_MUTANTS)
        ok = not failing_refs and not survivors
        _report(
            5,
            ok,
            f"reference drivers not holding: {len(failing_refs)} (tolerance 0) over {C5_SAMPLES} inputs; "
            f"surviving mutants: {len(survivors)} of {n_mutants} (tolerance 0)",
        )
        assert not failing_refs, failing_refs
        assert not survivors, survivors


class TestContractDivergence:
    """Two square implementations meeting 'Result >= 0' are told apart."""

    def test_criterion_6(self):
        v = contract_divergence_probe(
            C.square_mul, C.square_zero, C.non_negative_result, C.integer_inputs, C.same_value, budget=C6_BUDGET
        )
        sample = v.details.get("sample")
        ok = v.outcome is Outcome.VIOLATED and v.tag == "divergence" and sample is not None and sample < C6_BUDGET
        _report(6, ok, f"verdict {v.outcome.value} at sample {sample} (budget {C6_BUDGET})")
        assert ok


class TestCalendarRequirements:
    """Equinox frequency and year-end response on both calendars."""

    @staticmethod
    def _verdict(model_name, template, bindings, k=None):
        m = build_fixture(model_name)
        r = instantiate_template(get_template(template, k), m, bindings, template, C7_BOUND)
        return check_requirement(r, m.start()).outcome

    def test_criterion_7(self):
        freq = {"P": "equinox", "Q": "year_beginning", "R": "year_end"}
        resp = {"P": "year_beginning", "S": "year_end"}
        got = {
            "freq/compliant": self._verdict("calendar", "BOUNDED_EXISTENCE_BETWEEN", freq, 2),
            "freq/3eq": self._verdict("calendar_3eq", "BOUNDED_EXISTENCE_BETWEEN", freq, 2),
            "resp/compliant": self._verdict("calendar", "RESPONSE_GLOBAL", resp),
            "resp/3eq": self._verdict("calendar_3eq", "RESPONSE_GLOBAL", resp),
        }
        want = {
            "freq/compliant": Outcome.HOLDS,
            "freq/3eq": Outcome.VIOLATED,
            "resp/compliant": Outcome.HOLDS,
            "resp/3eq": Outcome.HOLDS,
        }
        ok = got == want
        _report(7, ok, ", ".join(f"{k}={v.value}" for k, v in got.items()) + f" (bound {C7_BOUND})")
        assert ok


_SIGNAL_FOR_SLOT = {"P": "p", "Q": "q", "R": "r", "S": "s", "T": "t"}


def _declarative_entry(tid, template) -> str:
    if tid == "STIMULUS_RESPONSE":
        bind = "stimulus:p response:q action:advance timer:countdown"
    else:
        bind = " ".join(f"{s}:{_SIGNAL_FOR_SLOT[s]}" for s in template.slot_names)
    lines = [f"[REQ_{tid}]", f"template = {tid}", "model = signals", f"bind = {bind}"]
    if tid != "STIMULUS_RESPONSE":
        lines.append("bound = 40")
    if template.pattern.k is not None and tid != "STIMULUS_RESPONSE":
        lines.append("k = 3")
    return "\n".join(lines)


class TestReuseLinearity:
    """Every catalog template instantiates from a short declarative entry."""

    def test_criterion_8(self):
        catalog = template_catalog()
        entries = {tid: _declarative_entry(tid, t) for tid, t in catalog.items()}
        longest = max(len(e.splitlines()) for e in entries.values())
        items = parse_suite_text("\n\n".join(entries.values()), seed=3, group="reuse")
        names = {i.name for i in items}
        verdicts = {}
        for item in items:
            v, _ = item.execute(0, None, 10)
            verdicts[item.name] = v.outcome
        ok = longest <= C8_MAX_LINES and names == {f"REQ_{t}" for t in catalog} and len(verdicts) == len(catalog)
        _report(
            8,
            ok,
            f"{len(items)} of {len(catalog)} templates instantiated and checked; longest entry {longest} lines "
            f"(limit {C8_MAX_LINES})",
        )
        assert ok


class TestDeterminism:
    """Two full runs produce byte-identical json."""

    def test_criterion_9(self):
        cmd = [sys.executable, "-m", "specdrivers", "verify", "--suite", "builtin:all", "--seed", str(C9_SEED), "--format", "json"]
        runs = [subprocess.run(cmd, capture_output=True, timeout=600) for _ in range(2)]
        same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
        statuses = [r.returncode for r in runs]
        ok = same and statuses[0] == statuses[1] and statuses[0] in (0, 1, 2)
        _report(9, ok, f"byte-identical={same} ({len(runs[0].stdout)} bytes), exit statuses {statuses}")
        assert ok, runs[0].stderr.decode()[-2000:]
