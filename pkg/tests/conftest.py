import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from svbullet.cycles import read_cycle
from svbullet.kernel.poly import PolyRing

settings.register_profile(
    "svbullet", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "svbullet"))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixture_cycle():
    def load(name):
        return read_cycle(FIXTURES / name)

    return load


@pytest.fixture
def P2():
    return PolyRing.projective(2)


@pytest.fixture
def P3():
    return PolyRing.projective(3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
