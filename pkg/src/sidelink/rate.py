"""Link capacities, feasible traffic rates and the weighted sum-rate objective.

Hop-1 links share the band and interfere; an inner UE's uplink to the gNodeB
does not see interference (multi-antenna gNodeB), but part of its capacity is
consumed by the relay's own traffic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import ProblemInstance

NONE = None  # "outer UE not assigned to any relay"


@dataclass
class Schedule:
    """Partial injective assignment of outer UEs to inner UEs.

    assign[i] is the inner-UE index serving outer UE i, or None if UE i is
    not activated. No two outer UEs may share a relay.
    """

    assign: list

    @property
    def n_o(self) -> int:
        return len(self.assign)

    def validate(self):
        used = [a for a in self.assign if a is not None]
        if len(used) != len(set(used)):
            raise ValueError("schedule not injective: relay shared by two outer UEs")

    def to_array(self) -> np.ndarray:
        """int64 vector with -1 standing for unassigned."""
        return np.array([-1 if a is None else a for a in self.assign], dtype=np.int64)

    @classmethod
    def from_array(cls, arr) -> "Schedule":
        return cls([None if a < 0 else int(a) for a in arr])

    @classmethod
    def empty(cls, n_o: int) -> "Schedule":
        return cls([None] * n_o)


@dataclass
class RateReport:
    c1: np.ndarray            # (n_o, n_i) hop-1 capacities
    c2: np.ndarray            # (n_i,) hop-2 capacities
    r1: np.ndarray            # (n_o,) feasible end-to-end rates
    weighted_sum: float


def hop1_capacities(inst: ProblemInstance, sched: Schedule) -> np.ndarray:
    """SINR capacities of every outer->inner link under the given activation set.

    Every active outer UE interferes at every inner UE, regardless of which
    relay it is assigned to. Inactive UEs have zero capacity (and cause no
    interference).
    """
    sched.validate()
    g = inst.gains
    active = np.array([a is not None for a in sched.assign], dtype=bool)
    rx = g.p_outer[:, None] * g.h1                      # received power at each inner UE
    interference = rx[active].sum(axis=0)[None, :] - np.where(active[:, None], rx, 0.0)
    signal = np.where(active[:, None], rx, 0.0)
    return np.log2(1.0 + signal / (g.noise + interference))


def hop2_capacities(inst: ProblemInstance) -> np.ndarray:
    """Interference-free uplink capacities of the inner UEs."""
    g = inst.gains
    return np.log2(1.0 + g.p_inner * g.h2 / g.noise)


def feasible_rate(c1_ij: float, c2_j: float, relay_r: float) -> float:
    """Largest end-to-end rate fitting both the hop-1 link and the relay's
    residual uplink capacity, floored at zero."""
    return max(0.0, min(c1_ij, c2_j - relay_r))


def evaluate(inst: ProblemInstance, sched: Schedule) -> RateReport:
    """Full objective evaluation of a schedule.

    A UE assigned to a saturated relay legally contributes rate 0 while still
    generating interference.
    """
    if sched.n_o != inst.n_o:
        raise ValueError(f"schedule has {sched.n_o} UEs, instance has {inst.n_o}")
    c1 = hop1_capacities(inst, sched)
    c2 = hop2_capacities(inst)
    r1 = np.zeros(inst.n_o)
    for i, j in enumerate(sched.assign):
        if j is not None:
            if not 0 <= j < inst.n_i:
                raise ValueError(f"relay index {j} out of range for {inst.n_i} inner UEs")
            r1[i] = feasible_rate(c1[i, j], c2[j], inst.relay_traffic[j])
    return RateReport(c1=c1, c2=c2, r1=r1, weighted_sum=float(inst.weights @ r1))
