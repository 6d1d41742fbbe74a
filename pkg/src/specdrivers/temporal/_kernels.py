"""Batch evaluation kernels for compiled LTL programs.

A program is a formula flattened in post-order: ``ops[k]`` is the opcode of
node ``k`` and ``a0[k]``/``a1[k]`` index its children (earlier nodes) or, for
atoms, the bit of the atom in the trace masks.  The root is the last node.

Traces are ``masks[t, i]`` bitmasks with ``lengths[t]`` valid steps.

The numba kernel is used when numba imports and ``SPECDRIVERS_DISABLE_NUMBA``
is unset (or ``0``); the numpy path vectorizes over traces instead and is
always available.
"""

import os

import numpy as np

ATOM, CONST_T, CONST_F, NOT, AND, OR, IMPLIES, NEXT, ALWAYS, EVENTUALLY, UNTIL = range(11)

_disabled = os.environ.get("SPECDRIVERS_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("disabled by SPECDRIVERS_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def eval_numpy(ops, a0, a1, masks, lengths):
    n_traces, width = masks.shape
    valid = np.arange(width)[None, :] < lengths[:, None]
    vals = []
    for k in range(len(ops)):
        op = ops[k]
        if op == ATOM:
            v = ((masks >> a0[k]) & 1).astype(np.bool_)
        elif op == CONST_T:
            v = np.ones((n_traces, width), np.bool_)
        elif op == CONST_F:
            v = np.zeros((n_traces, width), np.bool_)
        elif op == NOT:
            v = ~vals[a0[k]]
        elif op == AND:
            v = vals[a0[k]] & vals[a1[k]]
        elif op == OR:
            v = vals[a0[k]] | vals[a1[k]]
        elif op == IMPLIES:
            v = ~vals[a0[k]] | vals[a1[k]]
        elif op == NEXT:
            v = np.zeros((n_traces, width), np.bool_)
            v[:, :-1] = vals[a0[k]][:, 1:] & valid[:, 1:]
        else:
            g = vals[a0[k]]
            h = vals[a1[k]] if op == UNTIL else None
            sentinel = op == ALWAYS
            v = np.empty((n_traces, width), np.bool_)
            nxt = np.full(n_traces, sentinel)
            for i in range(width - 1, -1, -1):
                if op == ALWAYS:
                    cur = g[:, i] & nxt
                elif op == EVENTUALLY:
                    cur = g[:, i] | nxt
                else:
                    cur = h[:, i] | (g[:, i] & nxt)
                cur = np.where(valid[:, i], cur, sentinel)
                v[:, i] = cur
                nxt = cur
        vals.append(v)
    return vals[-1][:, 0].copy()


if HAVE_NUMBA:

    @njit(cache=True)
    def _eval_numba(ops, a0, a1, masks, lengths, out):
        n_traces, width = masks.shape
        n_nodes = ops.shape[0]
        vals = np.zeros((n_nodes, width + 1), np.bool_)
        for t in range(n_traces):
            n = lengths[t]
            for k in range(n_nodes):
                op = ops[k]
                vals[k, n] = op == ALWAYS
                for i in range(n - 1, -1, -1):
                    if op == ATOM:
                        vals[k, i] = ((masks[t, i] >> a0[k]) & 1) == 1
                    elif op == CONST_T:
                        vals[k, i] = True
                    elif op == CONST_F:
                        vals[k, i] = False
                    elif op == NOT:
                        vals[k, i] = not vals[a0[k], i]
                    elif op == AND:
                        vals[k, i] = vals[a0[k], i] and vals[a1[k], i]
                    elif op == OR:
                        vals[k, i] = vals[a0[k], i] or vals[a1[k], i]
                    elif op == IMPLIES:
                        vals[k, i] = (not vals[a0[k], i]) or vals[a1[k], i]
                    elif op == NEXT:
                        vals[k, i] = i + 1 < n and vals[a0[k], i + 1]
                    elif op == ALWAYS:
                        vals[k, i] = vals[a0[k], i] and vals[k, i + 1]
                    elif op == EVENTUALLY:
                        vals[k, i] = vals[a0[k], i] or vals[k, i + 1]
                    else:
                        vals[k, i] = vals[a1[k], i] or (vals[a0[k], i] and vals[k, i + 1])
            out[t] = vals[n_nodes - 1, 0]

    def eval_numba(ops, a0, a1, masks, lengths):
        out = np.empty(masks.shape[0], np.bool_)
        _eval_numba(ops, a0, a1, masks, lengths, out)
        return out

else:  # pragma: no cover - exercised only without numba

    def eval_numba(ops, a0, a1, masks, lengths):
        raise RuntimeError("numba backend unavailable")


DEFAULT_BACKEND = "numba" if HAVE_NUMBA else "numpy"
