import numpy as np
import pytest

from sidelink import GainTable, ModelConfig, ProblemInstance, Schedule


def make_instance(h1, h2, power=1.0, noise=1.0, relay=None, weights=None):
    """Build a ProblemInstance straight from gain arrays."""
    h1 = np.asarray(h1, dtype=np.float64)
    h2 = np.asarray(h2, dtype=np.float64)
    n_o, n_i = h1.shape
    gains = GainTable(
        h1=h1, h2=h2,
        p_outer=np.full(n_o, power),
        p_inner=np.full(n_i, power),
        noise=noise,
    )
    return ProblemInstance(
        gains=gains,
        relay_traffic=np.zeros(n_i) if relay is None else np.asarray(relay, dtype=np.float64),
        weights=np.ones(n_o) if weights is None else np.asarray(weights, dtype=np.float64),
    )


def random_schedule(rng, n_o, n_i):
    """A random C3-valid schedule (each relay used at most once)."""
    relays = list(range(n_i))
    assign = []
    for _ in range(n_o):
        if relays and rng.random() < 0.7:
            assign.append(relays.pop(int(rng.integers(len(relays)))))
        else:
            assign.append(None)
    return Schedule(assign)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one PASS/FAIL line per acceptance criterion, filled by test_acceptance.py
acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_lines):
            terminalreporter.write_line(line)
