import numpy as np
import pytest

from sidelink import (ModelConfig, Schedule, enumerate_schedules, evaluate,
                      gen_instance, solve_best_channel, solve_exhaustive,
                      solve_greedy, solve_random)

from conftest import make_instance
from oracles import best_schedule, greedy_trace


def as_tuples(schedules):
    return [tuple(s.assign) for s in schedules]


def inst_args(inst):
    return (inst.gains.h1.tolist(), inst.gains.h2.tolist(),
            float(inst.gains.p_outer[0]), inst.gains.noise,
            inst.relay_traffic.tolist(), inst.weights.tolist())


def test_enumerate_smallest_case():
    got = as_tuples(enumerate_schedules(1, 1, cap=100))
    assert got == [(None,), (0,)]


def test_enumerate_two_by_two():
    got = as_tuples(enumerate_schedules(2, 2, cap=100))
    assert len(got) == 7
    assert (0, 0) not in got and (1, 1) not in got
    assert got[0] == (None, None)


def test_enumerate_capped_sampling():
    rng = np.random.default_rng(0)
    got = list(enumerate_schedules(6, 6, cap=50000, rng=rng))
    assert len(got) == 50000
    assert tuple(got[0].assign) == (None,) * 6
    for s in got[:200]:
        s.validate()


def test_exhaustive_flags_incomplete_beyond_cap():
    inst = gen_instance(ModelConfig(n_o=6, n_i=6), np.random.default_rng(1))
    res = solve_exhaustive(inst, cap=50000, rng=np.random.default_rng(2))
    assert res.searched == 50000
    assert not res.exhaustive_complete


def test_exhaustive_takes_positive_link():
    inst = make_instance([[0.5]], [1.0])
    res = solve_exhaustive(inst, cap=100)
    assert res.schedule.assign == [0]
    assert res.exhaustive_complete


def test_exhaustive_cap_one_returns_empty():
    inst = gen_instance(ModelConfig(n_o=4, n_i=4), np.random.default_rng(3))
    res = solve_exhaustive(inst, cap=1, rng=np.random.default_rng(4))
    assert res.schedule.assign == [None] * 4
    assert res.report.weighted_sum == 0.0


def test_exhaustive_matches_recursive_oracle(rng):
    for _ in range(20):
        n = int(rng.integers(1, 4))
        inst = gen_instance(ModelConfig(n_o=n, n_i=n, r_max=0.3), rng)
        res = solve_exhaustive(inst, cap=50000)
        value, assign = best_schedule(*inst_args(inst))
        assert res.report.weighted_sum == pytest.approx(value, abs=1e-9)
        assert res.schedule.assign == assign


def test_greedy_empty_problem():
    inst = gen_instance(ModelConfig(n_o=0, n_i=0), np.random.default_rng(0))
    res = solve_greedy(inst)
    assert res.schedule.assign == []
    assert res.report.weighted_sum == 0.0


def test_greedy_single_candidate_optimal():
    inst = make_instance([[0.5]], [1.0])
    g = solve_greedy(inst)
    e = solve_exhaustive(inst, cap=100)
    assert g.schedule.assign == e.schedule.assign == [0]


def test_greedy_matches_step_by_step_oracle(rng):
    for _ in range(20):
        inst = gen_instance(ModelConfig(n_o=3, n_i=3, r_max=0.3), rng)
        res = solve_greedy(inst)
        assign, value = greedy_trace(*inst_args(inst))
        assert res.schedule.assign == assign
        assert res.report.weighted_sum == pytest.approx(value, abs=1e-9)
        optimum, _ = best_schedule(*inst_args(inst))
        assert res.report.weighted_sum <= optimum + 1e-9


def test_greedy_beats_every_single_link(rng):
    inst = gen_instance(ModelConfig(n_o=4, n_i=4), rng)
    best_single = 0.0
    for i in range(4):
        for j in range(4):
            sched = Schedule([None] * 4)
            sched.assign[i] = j
            best_single = max(best_single, evaluate(inst, sched).weighted_sum)
    assert solve_greedy(inst).report.weighted_sum >= best_single - 1e-12


def test_greedy_candidate_evaluations_bounded(rng):
    for n in (2, 5, 9):
        inst = gen_instance(ModelConfig(n_o=n, n_i=n), rng)
        res = solve_greedy(inst)
        assert res.searched <= (n + 1) * n * n


def test_random_assigns_everyone_when_possible(rng):
    inst = gen_instance(ModelConfig(n_o=4, n_i=4), rng)
    res = solve_random(inst, rng)
    assert sorted(res.schedule.assign) == [0, 1, 2, 3]


def test_random_exhausts_relays(rng):
    inst = gen_instance(ModelConfig(n_o=3, n_i=1), rng)
    res = solve_random(inst, rng)
    assigned = [a for a in res.schedule.assign if a is not None]
    assert assigned == [0]


def test_random_is_uniform_over_matchings():
    inst = gen_instance(ModelConfig(n_o=2, n_i=2), np.random.default_rng(0))
    rng = np.random.default_rng(42)
    hits = sum(solve_random(inst, rng).schedule.assign == [0, 1]
               for _ in range(10000))
    assert hits / 10000 == pytest.approx(0.5, abs=0.02)


def test_best_channel_argmax():
    inst = make_instance([[0.1, 0.3, 0.2]], [1.0, 1.0, 1.0])
    assert solve_best_channel(inst).schedule.assign == [1]


def test_best_channel_sequential_contention():
    inst = make_instance([[0.9, 0.5], [0.8, 0.3]], [1.0, 1.0])
    assert solve_best_channel(inst).schedule.assign == [0, 1]


def test_best_channel_tie_breaks_low_index():
    inst = make_instance([[0.2, 0.2, 0.2]], [1.0, 1.0, 1.0])
    assert solve_best_channel(inst).schedule.assign == [0]


def test_all_solvers_return_injective_schedules(rng):
    for _ in range(10):
        inst = gen_instance(ModelConfig(n_o=5, n_i=3), rng)
        for res in (solve_greedy(inst), solve_random(inst, rng),
                    solve_best_channel(inst),
                    solve_exhaustive(inst, cap=200, rng=rng)):
            res.schedule.validate()


def test_best_channel_beats_random_on_average():
    diffs = []
    for k in range(500):
        rng = np.random.default_rng(1000 + k)
        inst = gen_instance(ModelConfig(), rng)
        bc = solve_best_channel(inst).report.weighted_sum
        rnd = solve_random(inst, rng).report.weighted_sum
        diffs.append(bc - rnd)
    assert np.mean(diffs) > 0.0
