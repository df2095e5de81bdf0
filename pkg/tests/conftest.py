import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ktd.sampling import make_rng, random_pointset

settings.register_profile("ktd", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ktd")


@pytest.fixture
def pointset():
    """Factory: ``pointset(n, seed)`` gives a seeded set in general position."""
    def make(n, seed=0):
        return random_pointset(n, make_rng(seed))
    return make


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split("]")[1].split(".")[0])):
        terminalreporter.write_line(line)
