import pytest
from hypothesis import settings

from hamquery.bitmat import BinaryMatrix
from hamquery.codes import bundled_design, incidence
from hamquery.construct import build_q1, extend

settings.register_profile("default", derandomize=True, deadline=None)
settings.load_profile("default")

EXAMPLE1 = ["11111", "01001", "00101", "00011"]
EXAMPLE2 = ["1101", "1011", "0111"]


@pytest.fixture(scope="session")
def example1():
    return BinaryMatrix.from_rows(EXAMPLE1)


@pytest.fixture(scope="session")
def example2():
    return BinaryMatrix.from_rows(EXAMPLE2)


@pytest.fixture(scope="session")
def q1_3():
    return build_q1(3)


@pytest.fixture(scope="session")
def q1_4():
    return build_q1(4)


@pytest.fixture(scope="session")
def q2_9():
    return extend(build_q1(9), incidence(bundled_design("s2_4_25")).first_rows(45))


@pytest.fixture(scope="session")
def q3_9(q2_9):
    return extend(q2_9, incidence(bundled_design("s2_8_64")).first_rows(70))


_criteria = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion."""

    def record(label):
        _criteria.append((label, request.node))
        return label

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.acceptance_outcome = rep.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, node in _criteria:
        outcome = getattr(node, "acceptance_outcome", "not run")
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}")
