"""Command-line entry point: single solves, Monte Carlo sweeps, fairness
episodes, and discovery-protocol emulation."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from .harness import (ExperimentSpec, SOLVER_NAMES, _run_solver, emit,
                      run_sweep)
from .model import ModelConfig, gen_instance
from .protocol import CollisionModel, run_discovery, verify_trace
from .sched import POLICY_KINDS


def _parse_sweep(text: str):
    if "=" not in text:
        raise ValueError("expected --sweep var=v1,v2,...")
    var, _, vals = text.partition("=")
    values = []
    for v in vals.split(","):
        v = v.strip()
        if not v:
            continue
        try:
            num = float(v)
            values.append(int(num) if num == int(num) else num)
        except ValueError:
            values.append(v)
    return var.strip(), values


def _load_config(path):
    with open(path) as fh:
        doc = json.load(fh)
    base = ModelConfig(**doc.pop("base", {}))
    return doc, base


def _build_spec(args) -> ExperimentSpec:
    doc, base = _load_config(args.config) if args.config else ({}, ModelConfig())
    spec = ExperimentSpec(
        sweep_variable=doc.get("sweep_variable", "n_o"),
        values=doc.get("values", [base.n_o]),
        base=base,
        trials=doc.get("trials", 1000),
        slots=doc.get("slots", 500),
        cap=doc.get("cap", 50000),
        solvers=tuple(doc.get("solvers", [])),
        policies=tuple(doc.get("policies", [])),
        arrival_total=doc.get("arrival_total", 0.5),
        seed=doc.get("seed", 0),
    )
    # flags override file values
    if args.sweep:
        spec.sweep_variable, spec.values = _parse_sweep(args.sweep)
    if args.trials is not None:
        spec.trials = args.trials
    if args.slots is not None:
        spec.slots = args.slots
    if args.cap is not None:
        spec.cap = args.cap
    if args.seed is not None:
        spec.seed = args.seed
    if args.solvers:
        spec.solvers = tuple(s.strip() for s in args.solvers.split(","))
    if args.policies:
        spec.policies = tuple(p.strip() for p in args.policies.split(","))
    return spec


def _emit_rows(rows, args):
    if args.out:
        emit(rows, args.format, args.out)
    else:
        emit(rows, args.format, "/dev/stdout")
    if args.figures:
        from .plots import render_figures
        for path in render_figures(rows, args.figures):
            print(f"wrote {path}", file=sys.stderr)


def _cmd_solve(args):
    spec = _build_spec(args)
    rng = np.random.default_rng(spec.seed)
    inst = gen_instance(spec.base, rng)
    solvers = spec.solvers or ("greedy",)
    out = {}
    for name in solvers:
        if name not in SOLVER_NAMES:
            raise ValueError(f"unknown solver: {name}")
        res = _run_solver(name, inst, spec.cap, rng)
        out[name] = {
            "schedule": list(res.schedule.assign),
            "rates": res.report.r1.tolist(),
            "weighted_sum": res.report.weighted_sum,
            "searched": res.searched,
            "exhaustive_complete": res.exhaustive_complete,
        }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_sweep(args):
    spec = _build_spec(args)
    if not spec.solvers and not spec.policies and spec.sweep_variable != "policy":
        spec.solvers = ("greedy",)
    rows = run_sweep(spec)
    _emit_rows(rows, args)
    return 0


def _cmd_simulate(args):
    spec = _build_spec(args)
    policies = spec.policies or tuple(POLICY_KINDS)
    spec.sweep_variable = "policy"
    spec.values = list(policies)
    rows = run_sweep(spec)
    _emit_rows(rows, args)
    return 0


def _cmd_protocol(args):
    spec = _build_spec(args)
    rng = np.random.default_rng(spec.seed)
    inst = gen_instance(spec.base, rng)
    if args.backoff_window:
        model = CollisionModel.slotted_backoff(args.backoff_window)
    else:
        model = CollisionModel.none()
    trace = run_discovery(inst, model, rng)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(trace.to_jsonl())
    ok = verify_trace(trace, inst)
    print(json.dumps({
        "total_messages": trace.total_messages,
        "rounds": trace.rounds,
        "final_schedule": list(trace.final_schedule.assign),
        "verified": ok,
    }, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sidelink",
        description="Two-hop sidelink relay selection and scheduling toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("solve", _cmd_solve), ("sweep", _cmd_sweep),
                     ("simulate", _cmd_simulate), ("protocol", _cmd_protocol)):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON experiment config")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--slots", type=int)
        p.add_argument("--cap", type=int)
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--solvers", help="comma-separated solver names")
        p.add_argument("--policies", help="comma-separated policy names")
        p.add_argument("--sweep", help="sweep as var=v1,v2,...")
        p.add_argument("--figures", help="directory for rendered figures")
        if name == "protocol":
            p.add_argument("--backoff-window", type=int, default=0,
                           help="enable slotted backoff with this initial window")
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
