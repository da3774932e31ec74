"""Hot numeric kernels shared by the solvers and the slotted simulator.

All kernels work on plain float64/int64 arrays with -1 marking an unassigned
outer UE. W is the received-power matrix p_outer[:, None] * h1, resid is the
per-relay residual uplink capacity c2 - relay_traffic.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def rates_for_assign(W, resid, assign, sigma2):
    """Per-UE feasible rates for one assignment vector."""
    n_o, n_i = W.shape
    colsum = np.zeros(n_i)
    for i in range(n_o):
        if assign[i] >= 0:
            for j in range(n_i):
                colsum[j] += W[i, j]
    r = np.zeros(n_o)
    for i in range(n_o):
        j = assign[i]
        if j >= 0:
            sig = W[i, j]
            c1 = np.log2(1.0 + sig / (sigma2 + colsum[j] - sig))
            ri = min(c1, resid[j])
            r[i] = ri if ri > 0.0 else 0.0
    return r


@njit(cache=True)
def eval_assign(W, resid, weights, assign, sigma2):
    """Weighted sum rate of one assignment vector."""
    r = rates_for_assign(W, resid, assign, sigma2)
    total = 0.0
    for i in range(W.shape[0]):
        total += weights[i] * r[i]
    return total


@njit(cache=True)
def eval_many(W, resid, weights, assigns, sigma2):
    """Weighted sum rate for a batch of assignment vectors (m, n_o)."""
    m = assigns.shape[0]
    out = np.empty(m)
    for k in range(m):
        out[k] = eval_assign(W, resid, weights, assigns[k], sigma2)
    return out


@njit(cache=True)
def greedy_assign(W, resid, weights, eligible, sigma2):
    """Incremental best-link construction.

    Starting from the empty schedule, repeatedly add the (outer, inner) pair
    whose activation yields the largest full objective (rates of already
    active links re-evaluated under the new interference), requiring strict
    improvement. Ties resolve to the smallest (i, j).

    Returns (assign, objective, candidate evaluations).
    """
    n_o, n_i = W.shape
    assign = np.full(n_o, -1, dtype=np.int64)
    used = np.zeros(n_i, dtype=np.bool_)
    current = 0.0
    evals = 0
    while True:
        best_total = current
        best_i = -1
        best_j = -1
        for i in range(n_o):
            if assign[i] >= 0 or not eligible[i]:
                continue
            for j in range(n_i):
                if used[j]:
                    continue
                assign[i] = j
                total = eval_assign(W, resid, weights, assign, sigma2)
                assign[i] = -1
                evals += 1
                if total > best_total:
                    best_total = total
                    best_i = i
                    best_j = j
        if best_i < 0:
            break
        assign[best_i] = best_j
        used[best_j] = True
        current = best_total
    return assign, current, evals


def problem_arrays(inst):
    """(W, resid, sigma2) triple for the kernels, derived from an instance."""
    g = inst.gains
    W = g.p_outer[:, None] * g.h1
    c2 = np.log2(1.0 + g.p_inner * g.h2 / g.noise)
    resid = c2 - inst.relay_traffic
    return W, resid, g.noise
