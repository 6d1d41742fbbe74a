"""Evaluate one formula over many traces at once.

Used for exhaustive sweeps (every trace up to some length over a few atoms)
where calling :func:`ltl_eval` per trace is too slow.  The result must agree
with :func:`ltl_eval` trace by trace; the test-suite checks that on samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import ResolutionError
from ..kernel import Trace
from . import _kernels as K
from .ltl import Always, And, Atom, Const, Eventually, Formula, Implies, Next, Not, Or, Until

__all__ = ["Program", "compile_formula", "encode_traces", "enumerate_traces", "evaluate_batch"]

_UNARY = {Not: K.NOT, Next: K.NEXT, Always: K.ALWAYS, Eventually: K.EVENTUALLY}
_BINARY = {And: K.AND, Or: K.OR, Implies: K.IMPLIES, Until: K.UNTIL}


@dataclass(frozen=True)
class Program:
    ops: np.ndarray
    a0: np.ndarray
    a1: np.ndarray
    atoms: tuple


def compile_formula(f: Formula, atom_order: Sequence[str]) -> Program:
    """Flatten ``f`` to post-order; identical subformulas share one node."""
    bit = {a: i for i, a in enumerate(atom_order)}
    ops, a0, a1 = [], [], []
    index: dict = {}

    def emit(node) -> int:
        if node in index:
            return index[node]
        if isinstance(node, Atom):
            if node.name not in bit:
                raise ResolutionError(f"atom {node.name!r} not in {list(atom_order)}")
            row = (K.ATOM, bit[node.name], 0)
        elif isinstance(node, Const):
            row = (K.CONST_T if node.value else K.CONST_F, 0, 0)
        elif type(node) in _UNARY:
            row = (_UNARY[type(node)], emit(node.arg), 0)
        elif type(node) in _BINARY:
            left = emit(node.left)
            row = (_BINARY[type(node)], left, emit(node.right))
        else:
            raise TypeError(f"not a formula: {node!r}")
        ops.append(row[0])
        a0.append(row[1])
        a1.append(row[2])
        index[node] = len(ops) - 1
        return index[node]

    emit(f)
    return Program(
        np.asarray(ops, np.int64),
        np.asarray(a0, np.int64),
        np.asarray(a1, np.int64),
        tuple(atom_order),
    )


def encode_traces(traces: Iterable[Trace], atom_order: Sequence[str]):
    """Bitmask matrix and length vector for a collection of traces."""
    traces = list(traces)
    width = max((len(t) for t in traces), default=1)
    masks = np.zeros((len(traces), width), np.int64)
    lengths = np.zeros(len(traces), np.int64)
    for r, t in enumerate(traces):
        lengths[r] = len(t)
        for i, step in enumerate(t.steps):
            m = 0
            for b, a in enumerate(atom_order):
                if a in step:
                    m |= 1 << b
            masks[r, i] = m
    return masks, lengths


def enumerate_traces(n_atoms: int, length: int):
    """Every trace of exactly ``length`` steps over ``n_atoms`` atoms, as masks."""
    base = 1 << n_atoms
    count = base**length
    codes = np.arange(count, dtype=np.int64)
    masks = np.empty((count, length), np.int64)
    for i in range(length):
        masks[:, i] = codes % base
        codes //= base
    return masks, np.full(count, length, np.int64)


def evaluate_batch(f: Formula | Program, masks, lengths, atom_order=None, backend: str | None = None):
    """Truth of ``f`` at step 0 of each encoded trace."""
    prog = f if isinstance(f, Program) else compile_formula(f, atom_order)
    masks = np.ascontiguousarray(masks, np.int64)
    lengths = np.ascontiguousarray(lengths, np.int64)
    if np.any(lengths < 1) or np.any(lengths > masks.shape[1]):
        raise ValueError("trace lengths must lie in [1, masks.shape[1]]")
    backend = backend or K.DEFAULT_BACKEND
    if backend == "numba":
        return K.eval_numba(prog.ops, prog.a0, prog.a1, masks, lengths)
    if backend == "numpy":
        return K.eval_numpy(prog.ops, prog.a0, prog.a1, masks, lengths)
    raise ValueError(f"unknown backend {backend!r}")
