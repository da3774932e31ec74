"""Schedule construction: capped exhaustive search, greedy link addition,
and the random / best-channel baselines."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from ._kernels import eval_many, greedy_assign, problem_arrays
from .model import ProblemInstance
from .rate import RateReport, Schedule, evaluate

_SAMPLE_CHUNK = 4096


@dataclass
class SolveResult:
    schedule: Schedule
    report: RateReport
    searched: int
    exhaustive_complete: bool


def _valid_rows(arr: np.ndarray) -> np.ndarray:
    """Mask of rows that assign no relay twice (unassigned entries are -1)."""
    s = np.sort(arr, axis=1)
    return ~((s[:, 1:] == s[:, :-1]) & (s[:, 1:] >= 0)).any(axis=1)


def _all_valid_arrays(n_o: int, n_i: int) -> np.ndarray:
    """Every injective assignment vector, in lexicographic order (-1 < 0 < 1 ...)."""
    if n_o == 0:
        return np.empty((1, 0), dtype=np.int64)
    raw = np.array(list(itertools.product(range(-1, n_i), repeat=n_o)), dtype=np.int64)
    return raw[_valid_rows(raw)]


def _sampled_arrays(n_o: int, n_i: int, cap: int, rng: np.random.Generator) -> np.ndarray:
    """cap assignment vectors: the all-unassigned vector plus uniform draws
    from the valid set (rejection sampling, duplicates allowed)."""
    out = np.full((cap, n_o), -1, dtype=np.int64)
    filled = 1
    while filled < cap:
        chunk = rng.integers(-1, n_i, size=(_SAMPLE_CHUNK, n_o), dtype=np.int64)
        chunk = chunk[_valid_rows(chunk)]
        take = min(cap - filled, chunk.shape[0])
        out[filled:filled + take] = chunk[:take]
        filled += take
    return out


def enumerate_schedules(n_o: int, n_i: int, cap: int,
                        rng: Optional[np.random.Generator] = None) -> Iterator[Schedule]:
    """Yield candidate schedules for exhaustive search.

    If the raw search space (n_i+1)^n_o fits under the cap, every valid
    schedule is yielded exactly once in lexicographic order. Otherwise cap
    schedules are sampled uniformly from the valid set, always starting with
    the all-unassigned schedule.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if (n_i + 1) ** n_o <= cap:
        arrays = _all_valid_arrays(n_o, n_i)
    else:
        if rng is None:
            rng = np.random.default_rng()
        arrays = _sampled_arrays(n_o, n_i, cap, rng)
    for row in arrays:
        yield Schedule.from_array(row)


def solve_exhaustive(inst: ProblemInstance, cap: int = 50000,
                     rng: Optional[np.random.Generator] = None) -> SolveResult:
    """Best schedule over the (possibly sampled) candidate set.

    Ties break to the lexicographically smallest assignment vector.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    n_o, n_i = inst.n_o, inst.n_i
    complete = (n_i + 1) ** n_o <= cap
    if complete:
        arrays = _all_valid_arrays(n_o, n_i)
    else:
        if rng is None:
            rng = np.random.default_rng()
        arrays = _sampled_arrays(n_o, n_i, cap, rng)
    W, resid, sigma2 = problem_arrays(inst)
    totals = eval_many(W, resid, inst.weights, arrays, sigma2)
    best = float(totals.max())
    if complete:
        idx = int(np.argmax(totals))  # first max = lexicographically smallest
    elif best <= 0.0:
        idx = 0  # the guaranteed all-unassigned sample, lex-smallest overall
    else:
        ties = np.flatnonzero(totals == best)
        idx = int(ties[np.lexsort(arrays[ties].T[::-1])[0]])
    schedule = Schedule.from_array(arrays[idx])
    return SolveResult(
        schedule=schedule,
        report=evaluate(inst, schedule),
        searched=arrays.shape[0],
        exhaustive_complete=complete,
    )


def solve_greedy(inst: ProblemInstance,
                 eligible: Optional[np.ndarray] = None) -> SolveResult:
    """Greedy incremental link addition.

    Each step activates the (outer, inner) pair giving the largest full
    weighted sum rate (already-active links re-evaluated under the added
    interference), as long as the objective strictly improves. UEs outside
    the eligible mask are never candidates.
    """
    if eligible is None:
        eligible = np.ones(inst.n_o, dtype=bool)
    W, resid, sigma2 = problem_arrays(inst)
    assign, _, evals = greedy_assign(W, resid, inst.weights,
                                     np.asarray(eligible, dtype=bool), sigma2)
    schedule = Schedule.from_array(assign)
    return SolveResult(
        schedule=schedule,
        report=evaluate(inst, schedule),
        searched=max(int(evals), 1),
        exhaustive_complete=False,
    )


def solve_random(inst: ProblemInstance, rng: np.random.Generator) -> SolveResult:
    """Baseline: each outer UE in index order picks a uniformly random unused
    relay; once relays run out the rest stay unassigned."""
    available = list(range(inst.n_i))
    assign = []
    for _ in range(inst.n_o):
        if available:
            k = int(rng.integers(len(available)))
            assign.append(available.pop(k))
        else:
            assign.append(None)
    schedule = Schedule(assign)
    return SolveResult(schedule, evaluate(inst, schedule), searched=1,
                       exhaustive_complete=False)


def solve_best_channel(inst: ProblemInstance) -> SolveResult:
    """Baseline: each outer UE in index order takes the unused relay with the
    strongest received power, ignoring interference at selection time."""
    rx = inst.gains.p_outer[:, None] * inst.gains.h1
    used = np.zeros(inst.n_i, dtype=bool)
    assign = []
    for i in range(inst.n_o):
        if used.all():
            assign.append(None)
            continue
        masked = np.where(used, -np.inf, rx[i])
        j = int(np.argmax(masked))  # argmax first occurrence = smallest j on ties
        used[j] = True
        assign.append(j)
    schedule = Schedule(assign)
    return SolveResult(schedule, evaluate(inst, schedule), searched=1,
                       exhaustive_complete=False)
