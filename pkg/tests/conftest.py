import pytest
from hypothesis import HealthCheck, settings

from f1scong.cones import Cone
from f1scong.scong import ToricContext

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CATALOG = {
    "quadrant": Cone([(1, 0), (0, 1)]),
    "ray": Cone([(1, 0)], 2),
    "wedge": Cone([(1, 0), (1, 2)]),
    "simplicial3": Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
}


@pytest.fixture(scope="session")
def contexts():
    return {name: ToricContext(c) for name, c in CATALOG.items()}


@pytest.fixture(scope="session")
def quadrant(contexts):
    return contexts["quadrant"]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
