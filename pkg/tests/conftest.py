import random

import pytest
from hypothesis import HealthCheck, settings

from ultraforms.laurent import LeadingData

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_leading(rng, p, n, lo=-20, hi=20):
    return LeadingData(rng.randrange(1, p), tuple(rng.randint(lo, hi) for _ in range(n)), p)


def random_basis(rng, p, n, lo=-4, hi=4):
    """Random monomials whose exponent vectors have full rank (often not generating Z^n)."""
    from ultraforms.valgroup import rational_rank

    while True:
        vecs = [tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n)]
        if rational_rank(vecs) == n:
            return [LeadingData(rng.randrange(1, p), v, p) for v in vecs]


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
