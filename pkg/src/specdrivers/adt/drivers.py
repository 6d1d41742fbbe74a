"""Specification drivers: contracted routines that encode ADT properties.

A driver declares parameter slots, a precondition, a body made of operation
applications, the slots the body may modify and a postcondition.  Running a
driver on concrete inputs yields a :class:`~specdrivers.kernel.Verdict`;
checking a driver samples inputs from its generator, discarding samples that
miss the precondition.
"""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from ..errors import ConfigError, GuardError
from ..kernel import ActionDef, ConditionDef, EquivalenceDef, Outcome, QueryDef, Verdict, canonical

__all__ = [
    "Param",
    "Lit",
    "Call",
    "Snapshot",
    "Env",
    "InputGenerator",
    "AxiomDriver",
    "DriverSuite",
    "run_driver",
    "check_driver",
    "check_suite",
    "frame_check",
    "well_definedness_driver",
    "aliasing_self_copy_driver",
    "contract_divergence_probe",
    "DEFAULT_SAMPLES",
    "DEFAULT_RETRY_BUDGET",
]

DEFAULT_SAMPLES = 1000
DEFAULT_RETRY_BUDGET = 100


@dataclass(frozen=True)
class Param:
    name: str
    kind: str = "instance"  # "instance" or "value"


@dataclass(frozen=True)
class Lit:
    """A literal argument inside a driver body."""

    value: Any


@dataclass(frozen=True)
class Call:
    """Apply bound operation ``op``.

    Actions mutate (or replace) ``target``; creators and queries store their
    result in ``out``.  ``args`` are slot names or :class:`Lit` values.
    """

    op: str
    target: str | None = None
    args: tuple = ()
    out: str | None = None


@dataclass(frozen=True)
class Snapshot:
    """Store an independent copy of slot ``source`` in ``out`` (an ``old`` value)."""

    source: str
    out: str


class Env(dict):
    """Slot values seen by a driver's pre/post, with access to the suite."""

    def __init__(self, values, suite: "DriverSuite", driver: "AxiomDriver | None" = None):
        super().__init__(values)
        self.suite = suite
        self.driver = driver

    def eq(self, a, b, which: str | None = None) -> bool:
        """Equivalence of two slot values (or values) under the suite's relation."""
        a = self[a] if isinstance(a, str) and a in self else a
        b = self[b] if isinstance(b, str) and b in self else b
        if which is None and self.driver is not None and self.driver.equivalence is not None:
            e = self.driver.equivalence
        else:
            e = self.suite.equivalence_for(which)
        return bool(e.eq(a, b))

    def q(self, op: str, slot, *args):
        """Evaluate a bound query or condition on a (cloned) slot value."""
        fn = self.suite.resolve(op)
        value = self[slot] if isinstance(slot, str) and slot in self else slot
        value = copy.deepcopy(value)
        if isinstance(fn, ConditionDef):
            return bool(fn.eval(value))
        if isinstance(fn, QueryDef):
            return fn.eval(value, *args)
        if fn.creates:
            return fn.invoke(None, *args)
        return fn.invoke(value, *args)

    def guard_holds(self, op: str, slot) -> bool:
        fn = self.suite.resolve(op)
        guard = getattr(fn, "guard", None)
        if guard is None:
            return True
        value = self[slot] if isinstance(slot, str) and slot in self else slot
        return bool(guard.eval(value))


@dataclass(frozen=True)
class InputGenerator:
    """Seeded producer of driver inputs.

    ``fn(rng, size)`` builds a slot mapping from a ``random.Random``; the
    generator owns seeding so that the same ``(seed, size)`` always yields
    the same inputs.
    """

    fn: Callable[[random.Random, int], Mapping[str, Any]]
    max_size: int = 8

    def produce(self, seed: int, size: int | None = None) -> dict:
        size = self.max_size if size is None else size
        return dict(self.fn(random.Random(seed), size))


@dataclass(frozen=True)
class AxiomDriver:
    name: str
    params: tuple
    pre: Callable[[Env], bool]
    body: tuple
    modifies: frozenset
    post: Callable[[Env], bool]
    generator: InputGenerator | None = None
    covers: tuple = ()
    equivalence: EquivalenceDef | None = None
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "body", tuple(self.body))
        object.__setattr__(self, "modifies", frozenset(self.modifies))
        names = [p.name for p in self.params]
        if len(set(names)) != len(names):
            raise ValueError(f"driver {self.name}: duplicate parameter slots")
        unknown = self.modifies - set(names)
        if unknown:
            raise ValueError(f"driver {self.name}: modifies unknown slots {sorted(unknown)}")
        for c in self.body:
            # calls with an ``out`` slot read their target; the others update it
            if isinstance(c, Call) and c.out is None and c.target in names and c.target not in self.modifies:
                raise ValueError(f"driver {self.name}: body mutates {c.target!r} outside modifies")

    @property
    def param_names(self) -> tuple:
        return tuple(p.name for p in self.params)

    def operations(self) -> set:
        return {c.op for c in self.body if isinstance(c, Call)}


@dataclass(frozen=True)
class DriverSuite:
    """Named collection of drivers over one ADT binding.

    ``observers`` and ``constructors`` list the abstract operations whose
    pairwise interplay the axioms are meant to cover; ``covers`` on each
    driver records which pairs it exercises.
    """

    adt_name: str
    drivers: tuple
    binding: Mapping[str, Any]
    equivalence: EquivalenceDef
    observers: tuple = ()
    constructors: tuple = ()
    equivalences: Mapping[str, EquivalenceDef] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "drivers", tuple(self.drivers))
        object.__setattr__(self, "binding", dict(self.binding))
        needed = set()
        for d in self.drivers:
            needed |= d.operations()
        missing = sorted(needed - set(self.binding))
        if missing:
            raise ConfigError(f"suite {self.adt_name}: unbound operations", missing)

    def __repr__(self):
        return f"DriverSuite({self.adt_name!r}, {len(self.drivers)} drivers)"

    def resolve(self, op: str):
        try:
            return self.binding[op]
        except KeyError:
            raise ConfigError(f"suite {self.adt_name}: operation {op!r} is not bound") from None

    def equivalence_for(self, which: str | None) -> EquivalenceDef:
        if which is None:
            return self.equivalence
        try:
            return self.equivalences[which]
        except KeyError:
            raise ConfigError(f"suite {self.adt_name}: no equivalence {which!r}") from None

    def driver(self, name: str) -> AxiomDriver:
        for d in self.drivers:
            if d.name == name:
                return d
        raise ConfigError(f"suite {self.adt_name}: no driver {name!r}")

    def covered_pairs(self) -> set:
        return {pair for d in self.drivers for pair in d.covers}

    def required_pairs(self) -> set:
        return {(o, c) for o in self.observers for c in self.constructors}

    def with_binding(self, binding: Mapping[str, Any]) -> "DriverSuite":
        return DriverSuite(
            self.adt_name,
            self.drivers,
            {**self.binding, **binding},
            self.equivalence,
            self.observers,
            self.constructors,
            self.equivalences,
        )


def _describe(inputs: Mapping[str, Any]) -> dict:
    return {k: canonical(v) for k, v in sorted(inputs.items())}


def _arg(env: Env, a):
    if isinstance(a, Lit):
        return a.value
    if isinstance(a, str) and a in env:
        return env[a]
    raise ConfigError(f"driver argument {a!r} is neither a slot nor a literal")


def _execute(d: AxiomDriver, suite: DriverSuite, env: Env):
    """Run the body; returns a Verdict on failure, None otherwise."""
    for i, c in enumerate(d.body):
        if isinstance(c, Snapshot):
            env[c.out] = copy.deepcopy(env[c.source])
            continue
        fn = suite.resolve(c.op)
        args = [_arg(env, a) for a in c.args]
        if isinstance(fn, ConditionDef):
            env[c.out] = bool(fn.eval(env[c.target]))
        elif isinstance(fn, QueryDef):
            env[c.out] = fn.eval(env[c.target], *args)
        elif fn.creates:
            env[c.out or c.target] = fn.invoke(None, *args)
        else:
            # actions may be handed the target itself as an argument (aliasing)
            result = fn.invoke(env[c.target], *args)
            env[c.target] = result
            if c.out is not None:
                env[c.out] = result
    return None


def run_driver(d: AxiomDriver, suite: DriverSuite, inputs: Mapping[str, Any]) -> Verdict:
    """Execute ``d`` once on ``inputs`` (which are not mutated)."""
    names = set(d.param_names)
    if set(inputs) != names:
        raise ValueError(
            f"driver {d.name}: inputs {sorted(inputs)} do not match slots {sorted(names)}"
        )
    for op in d.operations():
        suite.resolve(op)
    shown = _describe(inputs)
    # one deepcopy of the whole mapping keeps sharing between slots intact
    env = Env(copy.deepcopy(dict(inputs)), suite, d)
    if not d.pre(env):
        return Verdict(Outcome.PRECONDITION_UNMET, f"{d.name}: precondition false", inputs=shown)
    framed = {p: canonical(env[p]) for p in d.param_names if p not in d.modifies}
    try:
        _execute(d, suite, env)
    except GuardError as exc:
        return Verdict(Outcome.VIOLATED, f"{d.name}: {exc}", inputs=shown, tag="guard")
    except (ConfigError, TypeError):
        raise
    except Exception as exc:  # a faulty implementation crashing is a failed driver
        return Verdict(
            Outcome.VIOLATED, f"{d.name}: body raised {type(exc).__name__}: {exc}", inputs=shown, tag="crash"
        )
    changed = sorted(p for p, before in framed.items() if canonical(env[p]) != before)
    if changed:
        return Verdict(
            Outcome.VIOLATED,
            f"{d.name}: body changed {changed} outside modifies {sorted(d.modifies)}",
            inputs=shown,
            tag="frame",
            details={"changed": changed},
        )
    try:
        ok = d.post(env)
    except GuardError as exc:
        return Verdict(Outcome.VIOLATED, f"{d.name}: {exc}", inputs=shown, tag="guard")
    except Exception as exc:
        return Verdict(
            Outcome.VIOLATED, f"{d.name}: postcondition raised {type(exc).__name__}: {exc}", inputs=shown, tag="crash"
        )
    if ok:
        return Verdict(Outcome.HOLDS, f"{d.name} holds")
    return Verdict(Outcome.VIOLATED, f"{d.name}: postcondition false", inputs=shown, tag="post")


def _sample_seeds(seed: int, name: str):
    rng = random.Random(f"{seed}:{name}")
    while True:
        yield rng.getrandbits(48)


def _shrink(d, suite, gen, sample_seed, size, verdict):
    """Halve the generation size while the driver still fails."""
    best_size, best = size, verdict
    while best_size > 0:
        smaller = best_size // 2
        candidate = gen.produce(sample_seed, smaller)
        v = run_driver(d, suite, candidate)
        if v.outcome is not Outcome.VIOLATED:
            break
        best_size, best = smaller, v
    return best_size, best


def check_driver(
    d: AxiomDriver,
    suite: DriverSuite,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    generator: InputGenerator | None = None,
) -> Verdict:
    """Run ``d`` on ``samples`` generated inputs that meet its precondition.

    Inputs missing the precondition are discarded and resampled, at most
    ``retry_budget`` times per sample.  The first violation is shrunk and
    returned; otherwise the verdict is Holds with the resample rate attached.
    """
    gen = generator or d.generator
    if gen is None:
        raise ConfigError(f"driver {d.name} has no input generator")
    seeds = _sample_seeds(seed, d.name)
    run = discarded = starved = 0
    for i in range(samples):
        for _ in range(retry_budget + 1):
            sample_seed = next(seeds)
            size = sample_seed % (gen.max_size + 1)
            inputs = gen.produce(sample_seed, size)
            v = run_driver(d, suite, inputs)
            if v.outcome is Outcome.PRECONDITION_UNMET:
                discarded += 1
                continue
            run += 1
            if v.outcome is Outcome.VIOLATED:
                shrunk_size, v = _shrink(d, suite, gen, sample_seed, size, v)
                return Verdict(
                    Outcome.VIOLATED,
                    v.message,
                    inputs=v.inputs,
                    tag=v.tag,
                    details={
                        "sample": i,
                        "sample_seed": sample_seed,
                        "size": shrunk_size,
                        "samples_run": run,
                        "discarded": discarded,
                    },
                )
            break
        else:
            starved += 1
    attempts = run + discarded
    details = {
        "samples_run": run,
        "discarded": discarded,
        "starved": starved,
        "resample_rate": discarded / attempts if attempts else 0.0,
    }
    if run == 0:
        return Verdict(
            Outcome.PRECONDITION_UNMET,
            f"{d.name}: no generated input met the precondition",
            details=details,
        )
    return Verdict(Outcome.HOLDS, f"{d.name} holds on {run} inputs", details=details)


def check_suite(suite: DriverSuite, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> dict:
    """Verdict per driver name, in declaration order."""
    return {d.name: check_driver(d, suite, seed, samples) for d in suite.drivers}


def frame_check(
    op: ActionDef,
    tracked: Sequence[str],
    inputs: Mapping[str, Any],
    target: str,
    args: Sequence = (),
    serialize: Callable[[Any], str] = canonical,
) -> Verdict:
    """Apply ``op`` to ``inputs[target]`` and compare tracked slots before/after.

    Slots named in ``op.modifies`` may change, and so may the target whenever
    ``op.modifies`` is non-empty (its entries then name regions of the
    target); any other tracked slot must serialize identically afterwards.
    """
    env = copy.deepcopy(dict(inputs))
    allowed = set(op.modifies) & set(env)
    if op.modifies:
        allowed.add(target)
    before = {s: serialize(env[s]) for s in tracked}
    call_args = [env[a] if isinstance(a, str) and a in env else getattr(a, "value", a) for a in args]
    shown = _describe(inputs)
    try:
        env[target] = op.invoke(env[target], *call_args)
    except GuardError as exc:
        return Verdict(Outcome.PRECONDITION_UNMET, str(exc), inputs=shown)
    changed = sorted(s for s in tracked if s not in allowed and serialize(env[s]) != before[s])
    if changed:
        return Verdict(
            Outcome.VIOLATED,
            f"{op.id} changed {changed} outside its modifies clause",
            inputs=shown,
            tag="frame",
            details={"changed": changed},
        )
    return Verdict(Outcome.HOLDS, f"{op.id} respects its frame on {sorted(tracked)}")


def well_definedness_driver(
    op,
    eq: EquivalenceDef,
    gen: InputGenerator,
    arg_slots: Sequence[str] = (),
    result_eq: EquivalenceDef | None = None,
    name: str | None = None,
) -> AxiomDriver:
    """Equal instances stay equal under identical calls of ``op``.

    For actions the two instances are compared afterwards; for queries the
    two results are compared (under ``result_eq`` when given).  ``gen`` must
    produce slots ``s1``, ``s2`` and every slot in ``arg_slots``.
    """
    args = tuple(arg_slots)
    params = (Param("s1"), Param("s2")) + tuple(Param(a, "value") for a in args)
    query = isinstance(op, (QueryDef, ConditionDef))
    if query:
        body = (Call(op.id, "s1", args, out="r1"), Call(op.id, "s2", args, out="r2"))
        cmp = result_eq or eq

        def post(env):
            return bool(cmp.eq(env["r1"], env["r2"]))

        modifies = frozenset()
    else:
        body = (Call(op.id, "s1", args), Call(op.id, "s2", args))

        def post(env):
            return bool(eq.eq(env["s1"], env["s2"]))

        modifies = frozenset({"s1", "s2"})
    return AxiomDriver(
        name=name or f"{op.id}_is_well_defined",
        params=params,
        pre=lambda env: bool(eq.eq(env["s1"], env["s2"])),
        body=body,
        modifies=modifies,
        post=post,
        generator=gen,
        equivalence=eq,
        description=f"whenever two instances are {eq.id}-equal, {op.id} keeps them (or its results) equal",
    )


def aliasing_self_copy_driver(
    copy_op: ActionDef,
    eq: EquivalenceDef,
    gen: InputGenerator | None = None,
    name: str | None = None,
) -> AxiomDriver:
    """``copy(x, x)`` must leave ``x`` equivalent to its prior value."""
    return AxiomDriver(
        name=name or f"{copy_op.id}_self_alias",
        params=(Param("x"),),
        pre=lambda env: True,
        body=(Snapshot("x", "old_x"), Call(copy_op.id, "x", ("x",))),
        modifies=frozenset({"x"}),
        post=lambda env: bool(eq.eq(env["x"], env["old_x"])),
        generator=gen,
        equivalence=eq,
        description=f"copying an instance onto itself with {copy_op.id} changes nothing",
    )


def contract_divergence_probe(
    impl_a: ActionDef,
    impl_b: ActionDef,
    contract: Callable[[Mapping[str, Any], Any], bool],
    gen: InputGenerator,
    eq: EquivalenceDef,
    budget: int = 100,
    seed: int = 0,
) -> Verdict:
    """Search for inputs where two contract-abiding implementations disagree.

    Implementations are creators called with the generated inputs as keyword
    arguments.  A disagreement shows the contract does not pin the result
    down; Holds only means none was found within ``budget`` samples.
    """
    seeds = _sample_seeds(seed, f"{impl_a.id}|{impl_b.id}")
    for i in range(budget):
        inputs = gen.produce(next(seeds))
        ra = impl_a.apply(**copy.deepcopy(inputs))
        rb = impl_b.apply(**copy.deepcopy(inputs))
        ok_a, ok_b = bool(contract(inputs, ra)), bool(contract(inputs, rb))
        results = {impl_a.id: canonical(ra), impl_b.id: canonical(rb)}
        if not (ok_a and ok_b):
            broken = [impl.id for impl, ok in ((impl_a, ok_a), (impl_b, ok_b)) if not ok]
            return Verdict(
                Outcome.VIOLATED,
                f"{broken} break the contract",
                inputs=_describe(inputs),
                tag="contract",
                details={"sample": i, "results": results},
            )
        if not eq.eq(ra, rb):
            return Verdict(
                Outcome.VIOLATED,
                f"contract underspecified: {impl_a.id} and {impl_b.id} both satisfy it but differ",
                inputs=_describe(inputs),
                tag="divergence",
                details={"sample": i, "results": results},
            )
    return Verdict(
        Outcome.HOLDS,
        f"no divergence between {impl_a.id} and {impl_b.id} in {budget} samples",
        details={"budget": budget},
    )
