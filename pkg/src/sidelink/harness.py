"""Monte Carlo experiment sweeps and result serialization."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .model import ModelConfig, gen_instance
from .sched import FairPolicy, POLICY_KINDS, QUEUE, draw_arrival_rates, run_episode
from .solvers import solve_best_channel, solve_exhaustive, solve_greedy, solve_random

SOLVER_NAMES = ("exhaustive", "greedy", "random", "best_channel")
SWEEP_VARIABLES = ("n_o", "alpha", "r_max", "policy")


@dataclass
class ExperimentSpec:
    sweep_variable: str
    values: list
    base: ModelConfig = field(default_factory=ModelConfig)
    trials: int = 1000
    slots: int = 500
    cap: int = 50000
    solvers: tuple = ()
    policies: tuple = ()
    arrival_total: float = 0.5
    seed: int = 0

    def validate(self):
        if self.sweep_variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable: {self.sweep_variable}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for s in self.solvers:
            if s not in SOLVER_NAMES:
                raise ValueError(f"unknown solver: {s}")
        for p in self.policies:
            if p not in POLICY_KINDS:
                raise ValueError(f"unknown policy: {p}")
        if self.sweep_variable == "policy":
            for v in self.values:
                if v not in POLICY_KINDS:
                    raise ValueError(f"unknown policy: {v}")


@dataclass
class ResultRow:
    sweep_var: str
    sweep_value: object
    method: str
    metric: str
    mean: float
    std: float
    trials: int


def child_rng(master_seed: int, sweep_value, trial: int) -> np.random.Generator:
    """Independent per-trial stream; adding sweep values never perturbs
    existing trials."""
    key = f"{master_seed}|{sweep_value}|{trial}".encode()
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return np.random.default_rng(int.from_bytes(digest, "little"))


def _apply_sweep(base: ModelConfig, var: str, value) -> ModelConfig:
    if var == "n_o":
        return base.with_size(int(value))
    if var == "alpha":
        return replace(base, alpha=float(value))
    if var == "r_max":
        return replace(base, r_max=float(value))
    return base  # policy sweep leaves the model untouched


def _run_solver(name: str, inst, cap, rng):
    if name == "exhaustive":
        return solve_exhaustive(inst, cap, rng)
    if name == "greedy":
        return solve_greedy(inst)
    if name == "random":
        return solve_random(inst, rng)
    return solve_best_channel(inst)


def _policy_for(kind: str, n_o: int, rng, arrival_total: float) -> FairPolicy:
    if kind == QUEUE:
        return FairPolicy(kind, draw_arrival_rates(n_o, rng, arrival_total))
    return FairPolicy(kind)


def run_sweep(spec: ExperimentSpec) -> list:
    """Run every (sweep value, trial, method) combination and aggregate.

    Output is a flat list of ResultRow with per-trial means and population
    standard deviations; a fixed spec and seed reproduce it exactly.
    """
    spec.validate()
    rows = []
    for value in spec.values:
        cfg = _apply_sweep(spec.base, spec.sweep_variable, value)
        solvers = () if spec.sweep_variable == "policy" else spec.solvers
        if spec.sweep_variable == "policy":
            policies = (value,)
        else:
            policies = spec.policies
        samples = {}

        def record(method, metric, x):
            samples.setdefault((method, metric), []).append(
                np.nan if x is None else float(x))

        for trial in range(spec.trials):
            rng = child_rng(spec.seed, value, trial)
            inst = gen_instance(cfg, rng)
            for name in solvers:
                res = _run_solver(name, inst, spec.cap, rng)
                record(name, "sum_rate", res.report.weighted_sum)
            for kind in policies:
                policy = _policy_for(kind, cfg.n_o, rng, spec.arrival_total)
                m = run_episode(inst, policy, spec.slots, rng)
                record(kind, "mean_admission", m.mean_admission)
                record(kind, "var_admission", m.var_admission)
                record(kind, "sum_rate", m.sum_rate_time_avg)
                record(kind, "max_wait", m.max_wait)
                if kind == QUEUE:
                    record(kind, "avg_delay", m.avg_delay)

        for (method, metric), xs in samples.items():
            arr = np.array(xs)
            rows.append(ResultRow(
                sweep_var=spec.sweep_variable,
                sweep_value=value,
                method=method,
                metric=metric,
                mean=float(np.nanmean(arr)),
                std=float(np.nanstd(arr)),
                trials=spec.trials,
            ))
    return rows


CSV_COLUMNS = ("sweep_var", "sweep_value", "method", "metric", "mean", "std", "trials")


def emit(rows: list, format: str, path: str):
    """Write rows as CSV or JSON. Floats carry 9 significant digits."""
    if not rows:
        raise ValueError("nothing to emit")
    if format == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for r in rows:
            lines.append(",".join([
                r.sweep_var, str(r.sweep_value), r.method, r.metric,
                f"{r.mean:.9g}", f"{r.std:.9g}", str(r.trials),
            ]))
        text = "\n".join(lines) + "\n"
    elif format == "json":
        text = json.dumps([{
            "sweep_var": r.sweep_var, "sweep_value": r.sweep_value,
            "method": r.method, "metric": r.metric,
            "mean": float(f"{r.mean:.9g}"), "std": float(f"{r.std:.9g}"),
            "trials": r.trials,
        } for r in rows], indent=2) + "\n"
    else:
        raise ValueError(f"unknown format: {format}")
    with open(path, "w") as fh:
        fh.write(text)


def load_rows(path: str) -> list:
    """Inverse of emit(..., 'json', ...)."""
    with open(path) as fh:
        docs = json.load(fh)
    return [ResultRow(**d) for d in docs]
