"""Slotted-time fair scheduling: per-slot greedy solves with dynamic weights,
Bernoulli packet arrivals, and fairness / latency metrics."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._kernels import greedy_assign, problem_arrays, rates_for_assign
from .model import ProblemInstance

GREEDY_STATIC = "GREEDY_STATIC"
WAIT_TIME = "WAIT_TIME"
QUEUE = "QUEUE"
POLICY_KINDS = (GREEDY_STATIC, WAIT_TIME, QUEUE)


@dataclass
class FairPolicy:
    kind: str
    arrival_rates: Optional[np.ndarray] = None  # Bernoulli per-slot, QUEUE only

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind: {self.kind}")
        if self.arrival_rates is not None:
            lam = np.asarray(self.arrival_rates, dtype=np.float64)
            if ((lam < 0) | (lam > 1)).any():
                raise ValueError("arrival rates must lie in [0, 1]")
            self.arrival_rates = lam


@dataclass
class EpisodeState:
    """Full per-slot record of one simulated episode."""

    slot: int
    weights: np.ndarray                 # final weights
    queues: np.ndarray                  # final backlog
    activation_history: list            # per UE, slots in which it transmitted
    arrivals: np.ndarray                # (slots, n_o) packet arrivals (0/1)
    served: np.ndarray                  # (slots, n_o) fluid drained per slot
    rates: np.ndarray                   # (slots, n_o) scheduled link rates
    weights_history: np.ndarray         # (slots, n_o) weights used when solving
    backlog_pre_service: np.ndarray     # (slots,) total backlog after arrivals
    sum_rate_total: float = 0.0


@dataclass
class EpisodeMetrics:
    admission_ratio_per_ue: np.ndarray
    mean_admission: float
    var_admission: float
    sum_rate_time_avg: float
    max_wait: Optional[float]
    avg_delay: Optional[float]


def update_weight_wait(w: float, activated: bool) -> float:
    """Wait-time rule: +1 per idle slot, -1 per served slot, floored at 1."""
    return max(w - 1.0, 1.0) if activated else w + 1.0


def update_weight_queue(w: float, lam: float, activated: bool, served: float = 0.0) -> float:
    """Backlog rule: +lambda per slot, minus the served rate when activated,
    floored at 0."""
    return max(w + lam - served, 0.0) if activated else w + lam


def simulate_episode(inst: ProblemInstance, policy: FairPolicy, slots: int,
                     rng: np.random.Generator,
                     trace_path: Optional[str] = None) -> EpisodeState:
    """Run one episode with the channel held fixed across all slots."""
    if slots < 1:
        raise ValueError("slots must be at least 1")
    n = inst.n_o
    if policy.kind == QUEUE:
        if policy.arrival_rates is None or len(policy.arrival_rates) != n:
            raise ValueError("QUEUE policy needs one arrival rate per outer UE")
        lam = policy.arrival_rates
    W, resid, sigma2 = problem_arrays(inst)

    weights = np.ones(n)
    queues = np.zeros(n)
    history = [[] for _ in range(n)]
    arrivals = np.zeros((slots, n))
    served = np.zeros((slots, n))
    rates = np.zeros((slots, n))
    weights_hist = np.zeros((slots, n))
    backlog_pre = np.zeros(slots)
    sum_rate_total = 0.0
    all_eligible = np.ones(n, dtype=bool)
    writer = None
    fh = None
    if trace_path is not None:
        fh = open(trace_path, "w", newline="")
        writer = csv.writer(fh)
        writer.writerow(["slot", "ue", "activated", "rate", "weight", "queue"])

    for t in range(slots):
        if policy.kind == QUEUE:
            a = (rng.random(n) < lam).astype(np.float64)
            arrivals[t] = a
            queues += a
            w = queues.copy()
            eligible = queues > 0
        elif policy.kind == WAIT_TIME:
            w = weights.copy()
            eligible = all_eligible
        else:
            w = np.ones(n)
            eligible = all_eligible
        weights_hist[t] = w
        backlog_pre[t] = queues.sum()

        assign, _, _ = greedy_assign(W, resid, w, eligible, sigma2)
        active = assign >= 0
        r = rates_for_assign(W, resid, assign, sigma2)
        rates[t] = r
        sum_rate_total += float(r.sum())
        for i in np.flatnonzero(active):
            history[i].append(t)

        if policy.kind == QUEUE:
            drained = np.where(active, np.minimum(queues, r), 0.0)
            served[t] = drained
            queues -= drained
            weights = queues.copy()
        elif policy.kind == WAIT_TIME:
            for i in range(n):
                weights[i] = update_weight_wait(weights[i], bool(active[i]))

        if writer is not None:
            for i in range(n):
                writer.writerow([t, i, int(active[i]), f"{r[i]:.9g}",
                                 f"{w[i]:.9g}", f"{queues[i]:.9g}"])

    if fh is not None:
        fh.close()
    return EpisodeState(
        slot=slots, weights=weights, queues=queues, activation_history=history,
        arrivals=arrivals, served=served, rates=rates,
        weights_history=weights_hist, backlog_pre_service=backlog_pre,
        sum_rate_total=sum_rate_total,
    )


def admission_stats(histories: list, slots: int) -> tuple:
    """(mean, population variance) of per-UE admission ratios."""
    if slots < 1:
        raise ValueError("slots must be at least 1")
    if len(histories) == 0:
        raise ValueError("no UEs")
    ratios = np.array([len(h) / slots for h in histories])
    return float(ratios.mean()), float(ratios.var())


def max_wait(histories: list, slots: int) -> Optional[int]:
    """Largest inter-activation gap over all UEs ever activated.

    The gap before the first activation (first slot + 1) and the tail gap
    after the last one both count. UEs never activated are excluded; returns
    None if nothing was ever activated.
    """
    worst = None
    for h in histories:
        if not h:
            continue
        gaps = [h[0] + 1] + [b - a for a, b in zip(h, h[1:])] + [slots - h[-1]]
        m = max(gaps)
        worst = m if worst is None else max(worst, m)
    return worst


def avg_delay(state: EpisodeState, policy: FairPolicy, slots: int) -> float:
    """Little's-law delay estimate: time-averaged total backlog (measured
    after arrivals, before service) over the realized total arrival rate."""
    if policy.kind != QUEUE:
        raise ValueError("queueing delay is defined only for the QUEUE policy")
    total_arrivals = float(state.arrivals.sum())
    if total_arrivals == 0.0:
        return 0.0
    mean_backlog = float(state.backlog_pre_service[:slots].mean())
    return mean_backlog / (total_arrivals / slots)


def episode_metrics(state: EpisodeState, policy: FairPolicy, slots: int) -> EpisodeMetrics:
    mean_adm, var_adm = admission_stats(state.activation_history, slots)
    ratios = np.array([len(h) / slots for h in state.activation_history])
    delay = avg_delay(state, policy, slots) if policy.kind == QUEUE else None
    return EpisodeMetrics(
        admission_ratio_per_ue=ratios,
        mean_admission=mean_adm,
        var_admission=var_adm,
        sum_rate_time_avg=state.sum_rate_total / slots,
        max_wait=max_wait(state.activation_history, slots),
        avg_delay=delay,
    )


def run_episode(inst: ProblemInstance, policy: FairPolicy, slots: int,
                rng: np.random.Generator,
                trace_path: Optional[str] = None) -> EpisodeMetrics:
    """Simulate one episode and aggregate its fairness / rate metrics."""
    state = simulate_episode(inst, policy, slots, rng, trace_path=trace_path)
    return episode_metrics(state, policy, slots)


def draw_arrival_rates(n_o: int, rng: np.random.Generator,
                       total_rate: float = 0.5) -> np.ndarray:
    """Per-UE Bernoulli rates ~ U[0, 2*total/n_o], so the expected total
    arrival rate across UEs equals total_rate."""
    if n_o < 1:
        raise ValueError("need at least one outer UE")
    hi = min(2.0 * total_rate / n_o, 1.0)
    return rng.random(n_o) * hi
