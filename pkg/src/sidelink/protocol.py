"""Slotted emulation of the six-step discovery-and-assignment exchange,
with message accounting and an optional slotted-backoff collision model."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .model import ProblemInstance
from .rate import Schedule
from .solvers import solve_greedy

I_AM_HERE = "I_AM_HERE"
I_HEAR_YOU_ACK = "I_HEAR_YOU_ACK"
CSI_REPORT = "CSI_REPORT"
ASSIGNMENT_BROADCAST = "ASSIGNMENT_BROADCAST"
ACTIVATION_ACK = "ACTIVATION_ACK"

_PHASE = {I_AM_HERE: 0, I_HEAR_YOU_ACK: 1, CSI_REPORT: 2,
          ASSIGNMENT_BROADCAST: 3, ACTIVATION_ACK: 4}

BROADCAST = "*"
GNB = "gnb"


def outer_id(i: int) -> str:
    return f"o{i}"


def inner_id(j: int) -> str:
    return f"i{j}"


@dataclass
class Message:
    kind: str
    src: str
    dst: str
    slot: int
    payload: object = None


@dataclass
class CollisionModel:
    """NONE: every discovery is heard. SLOTTED_BACKOFF: colliding discoveries
    retry in a doubled window."""

    kind: str = "NONE"
    window: int = 4

    @classmethod
    def none(cls) -> "CollisionModel":
        return cls(kind="NONE")

    @classmethod
    def slotted_backoff(cls, window: int) -> "CollisionModel":
        if window < 1:
            raise ValueError("backoff window must be at least 1")
        return cls(kind="SLOTTED_BACKOFF", window=window)


@dataclass
class ProtocolTrace:
    messages: list
    rounds: int
    final_schedule: Schedule

    @property
    def total_messages(self) -> int:
        return len(self.messages)

    def to_jsonl(self) -> str:
        lines = [json.dumps({"slot": m.slot, "kind": m.kind,
                             "src": m.src, "dst": m.dst})
                 for m in self.messages]
        return "\n".join(lines) + ("\n" if lines else "")


def message_bound(n_o: int) -> int:
    """Collision-free message count of the whole exchange."""
    if n_o < 0:
        raise ValueError("n_o must be nonnegative")
    return 4 * n_o + 1


def _discovery_phase(n_o, model, rng, messages):
    """Run step 1; returns (responder order irrelevant, rounds, next free slot)."""
    if model.kind == "NONE":
        for i in range(n_o):
            messages.append(Message(I_AM_HERE, outer_id(i), BROADCAST, i))
        return 1, n_o
    pending = list(range(n_o))
    window = model.window
    base = 0
    rounds = 0
    while pending:
        rounds += 1
        picks = {i: base + int(rng.integers(window)) for i in pending}
        occupancy = {}
        for i in pending:
            occupancy.setdefault(picks[i], []).append(i)
        for i in pending:
            messages.append(Message(I_AM_HERE, outer_id(i), BROADCAST, picks[i]))
        pending = [i for i in pending if len(occupancy[picks[i]]) > 1]
        base += window
        window *= 2
    return rounds, base


def run_discovery(inst: ProblemInstance, collision_model: Optional[CollisionModel] = None,
                  rng: Optional[np.random.Generator] = None) -> ProtocolTrace:
    """Emulate the full exchange.

    Steps: outer UEs announce themselves (with backoff retries under the
    collision model); the best-gain inner UE acks each outer UE; every inner
    UE reports its measured gain column to the gNodeB; the gNodeB runs the
    greedy solver and broadcasts the assignment; one activation ack goes back
    to each outer UE (from its relay, or from its discovery responder when it
    was left unassigned).
    """
    if collision_model is None:
        collision_model = CollisionModel.none()
    if rng is None:
        rng = np.random.default_rng()
    n_o, n_i = inst.n_o, inst.n_i
    messages = []
    if n_o == 0 or n_i == 0:
        return ProtocolTrace(messages=[], rounds=0,
                             final_schedule=solve_greedy(inst).schedule)

    rounds, slot = _discovery_phase(n_o, collision_model, rng, messages)

    rx = inst.gains.p_outer[:, None] * inst.gains.h1
    responder = np.argmax(rx, axis=1)  # best-gain inner UE per outer UE
    for i in range(n_o):
        messages.append(Message(I_HEAR_YOU_ACK, inner_id(int(responder[i])),
                                outer_id(i), slot))
        slot += 1
    for j in range(n_i):
        messages.append(Message(CSI_REPORT, inner_id(j), GNB, slot,
                                payload=inst.gains.h1[:, j].tolist()))
        slot += 1

    schedule = solve_greedy(inst).schedule
    messages.append(Message(ASSIGNMENT_BROADCAST, GNB, BROADCAST, slot,
                            payload=list(schedule.assign)))
    slot += 1
    for i, j in enumerate(schedule.assign):
        sender = inner_id(j) if j is not None else inner_id(int(responder[i]))
        messages.append(Message(ACTIVATION_ACK, sender, outer_id(i), slot,
                                payload={"ue": i, "relay": j}))
        slot += 1
    return ProtocolTrace(messages=messages, rounds=rounds, final_schedule=schedule)


def verify_trace(trace: ProtocolTrace, inst: ProblemInstance) -> bool:
    """Check step ordering, the collision-free message bound, and that the
    distributed outcome matches the centralized greedy solve."""
    last_phase = 0
    for m in trace.messages:
        if m.kind not in _PHASE:
            return False
        phase = _PHASE[m.kind]
        if phase < last_phase:
            return False
        last_phase = phase
    if trace.final_schedule.assign != solve_greedy(inst).schedule.assign:
        return False
    n_o = inst.n_o
    if n_o > 0 and inst.n_i > 0:
        discoveries = sum(1 for m in trace.messages if m.kind == I_AM_HERE)
        collision_free = discoveries == n_o
        if collision_free and trace.total_messages != message_bound(n_o):
            return False
    return True
