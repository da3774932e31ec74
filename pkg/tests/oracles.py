"""Independent reference implementations used only to cross-check the
package. Everything here is written from the formulas directly, with plain
Python loops, and never calls into the modules it verifies."""
import itertools
import math


def schedule_value(h1, h2, power, noise, relay, weights, assign):
    """Weighted sum rate of one assignment, computed from scratch."""
    n_o = len(h1)
    total = 0.0
    for i, j in enumerate(assign):
        if j is None:
            continue
        interference = 0.0
        for k, jk in enumerate(assign):
            if k != i and jk is not None:
                interference += power * h1[k][j]
        c1 = math.log2(1.0 + power * h1[i][j] / (noise + interference))
        c2 = math.log2(1.0 + power * h2[j] / noise)
        r = min(c1, c2 - relay[j])
        total += weights[i] * max(0.0, r)
    return total


def best_schedule(h1, h2, power, noise, relay, weights):
    """Recursive full enumeration over all injective assignments.

    Returns (best value, lexicographically smallest best assignment with
    None < 0 < 1 < ...).
    """
    n_o, n_i = len(h1), len(h2)
    best = [-1.0, None]

    def key(assign):
        return [-1 if a is None else a for a in assign]

    def recurse(prefix, used):
        if len(prefix) == n_o:
            v = schedule_value(h1, h2, power, noise, relay, weights, prefix)
            if v > best[0] or (v == best[0] and key(prefix) < key(best[1])):
                best[0] = v
                best[1] = list(prefix)
            return
        for choice in [None] + list(range(n_i)):
            if choice is not None and choice in used:
                continue
            recurse(prefix + [choice], used | ({choice} if choice is not None else set()))

    recurse([], set())
    return best[0], best[1]


def greedy_trace(h1, h2, power, noise, relay, weights):
    """Step-by-step simulation of the incremental best-link rule."""
    n_o, n_i = len(h1), len(h2)
    assign = [None] * n_o
    current = 0.0
    while True:
        best = (current, None, None)
        for i in range(n_o):
            if assign[i] is not None:
                continue
            for j in range(n_i):
                if j in assign:
                    continue
                trial = list(assign)
                trial[i] = j
                v = schedule_value(h1, h2, power, noise, relay, weights, trial)
                if v > best[0]:
                    best = (v, i, j)
        if best[1] is None:
            return assign, current
        assign[best[1]] = best[2]
        current = best[0]


def packet_delays(arrivals, served):
    """Per-packet FIFO delays under fluid service.

    arrivals: (slots, n) 0/1 matrix; served: (slots, n) fluid drained.
    A packet's delay is (slot its last fluid bit leaves) - arrival slot + 1.
    Packets still queued at the end are skipped.
    """
    slots, n = arrivals.shape
    delays = []
    for ue in range(n):
        arr_slots = [t for t in range(slots) for _ in range(int(arrivals[t][ue]))]
        cum_needed = list(range(1, len(arr_slots) + 1))
        cum_served = 0.0
        idx = 0
        for t in range(slots):
            cum_served += served[t][ue]
            while idx < len(arr_slots) and cum_served >= cum_needed[idx] - 1e-12:
                delays.append(t - arr_slots[idx] + 1)
                idx += 1
    return delays
