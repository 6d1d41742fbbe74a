"""Compare the numba and numpy batch LTL evaluators.

Runs every supported (pattern, scope) formula over all traces of a fixed
length and reports traces per second for each backend.  The two backends
must return identical verdict vectors; the script aborts otherwise.

    python3 benchmarks/bench_ltl_batch.py [--length 7] [--repeat 3]

Set SPECDRIVERS_DISABLE_NUMBA=1 to time the numpy path alone.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from specdrivers.temporal import _kernels as K
from specdrivers.temporal.batch import compile_formula, enumerate_traces, evaluate_batch
from specdrivers.temporal.patterns import pattern_to_ltl, required_slots, supported_pairs


def _programs():
    atoms = ("P", "Q", "R", "S", "T")
    out = []
    for pattern, scope in supported_pairs():
        slots = required_slots(pattern, scope)
        f = pattern_to_ltl(pattern, scope, {s: s for s in slots})
        out.append((f"{pattern}/{scope.name}", compile_formula(f, atoms), len(slots)))
    return out


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=7)
    ap.add_argument("--atoms", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    masks, lengths = enumerate_traces(args.atoms, args.length)
    programs = _programs()
    backends = ["numpy"] + (["numba"] if K.HAVE_NUMBA else [])
    if K.HAVE_NUMBA:  # compile outside the timed region
        evaluate_batch(programs[0][1], masks[:1], lengths[:1], backend="numba")

    results = {}
    for backend in backends:
        def run():
            return [evaluate_batch(p, masks, lengths, backend=backend) for _, p, _ in programs]

        results[backend] = run()
        secs = _time(run, args.repeat)
        rate = len(programs) * len(masks) / secs
        print(f"{backend:>6}: {len(programs)} formulas x {len(masks)} traces in {secs:.3f} s ({rate:,.0f} traces/s)")

    if len(backends) == 2:
        for (name, _, _), a, b in zip(programs, results["numpy"], results["numba"]):
            if not np.array_equal(a, b):
                raise SystemExit(f"backends disagree on {name}")
        print("backends agree on every formula")
    else:
        print("numba unavailable or disabled; numpy only")


if __name__ == "__main__":
    main()
