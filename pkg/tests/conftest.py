import pytest
from hypothesis import HealthCheck, settings

from skewsagbi.diagram import parse_diagram

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIG1 = parse_diagram([6, 5, 5, 3], [2, 1, 0, 0])
FIG4 = parse_diagram([9, 8, 8, 6, 5, 5, 5, 2, 2], [5, 4, 4, 3, 2, 2, 2, 0, 0])


@pytest.fixture
def fig1():
    return FIG1


@pytest.fixture
def fig4():
    return FIG4


def rect(a, b):
    return parse_diagram([b] * a)


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
