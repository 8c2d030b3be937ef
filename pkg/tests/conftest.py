"""Session fixtures: steady cavity benchmark states shared across tests.

The two benchmark runs dominate the suite's runtime (several minutes
each), so they execute once per session and every consumer reuses the
converged state.
"""

import time

import pytest

from slns import cases
from slns.driver import initialize, run
from slns.grid import ScalarField


class SteadyCavity:
    """A converged benchmark run plus its wall-clock cost."""

    def __init__(self, case, state, history, elapsed):
        self.case = case
        self.state = state
        self.history = history
        self.elapsed = elapsed


def _run_benchmark(reynolds):
    case = cases.lid_driven_cavity(reynolds)
    cases.check_cavity_regime(case)
    cfg = case.run_config()
    grid = case.make_grid()
    walls = case.wall_specs()
    t0 = time.monotonic()
    s = initialize(cfg, walls, omega0=ScalarField.zeros(grid))
    s, history = run(s, cfg, walls)
    return SteadyCavity(case, s, history, time.monotonic() - t0)


@pytest.fixture(scope="session")
def cavity_steady_100():
    return _run_benchmark(100.0)


@pytest.fixture(scope="session")
def cavity_steady_1000():
    return _run_benchmark(1000.0)
