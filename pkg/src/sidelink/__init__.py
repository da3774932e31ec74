"""Two-hop sidelink relay selection: rate model, schedulers, fairness
simulator, and discovery protocol emulation."""

from .model import (GainTable, ModelConfig, ProblemInstance, Topology,
                    gains_from_topology, gen_instance, gen_topology)
from .rate import (NONE, RateReport, Schedule, evaluate, feasible_rate,
                   hop1_capacities, hop2_capacities)
from .solvers import (SolveResult, enumerate_schedules, solve_best_channel,
                      solve_exhaustive, solve_greedy, solve_random)
from .sched import (FairPolicy, EpisodeMetrics, EpisodeState, GREEDY_STATIC,
                    QUEUE, WAIT_TIME, admission_stats, avg_delay,
                    draw_arrival_rates, episode_metrics, max_wait,
                    run_episode, simulate_episode, update_weight_queue,
                    update_weight_wait)
from .protocol import (ACTIVATION_ACK, ASSIGNMENT_BROADCAST, BROADCAST,
                       CSI_REPORT, CollisionModel, GNB, I_AM_HERE,
                       I_HEAR_YOU_ACK, Message, ProtocolTrace, inner_id,
                       message_bound, outer_id, run_discovery, verify_trace)
from .harness import (ExperimentSpec, ResultRow, child_rng, emit, load_rows,
                      run_sweep)

__all__ = [name for name in dir() if not name.startswith("_")]
