import pytest

from probcalc.decision import DEFAULT_MAX_WORLDS, ENUM_ATOMS, ENUM_DEPTH

from criteria_log import RESULTS as CRITERIA

DEFAULT_SEED = 1729


def pytest_addoption(parser):
    group = parser.getgroup("probcalc")
    group.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")
    group.addoption("--enum-atoms", type=int, default=ENUM_ATOMS)
    group.addoption("--enum-depth", type=int, default=ENUM_DEPTH)
    group.addoption("--max-worlds", type=int, default=DEFAULT_MAX_WORLDS)


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture(scope="session")
def enum_limits(request):
    opt = request.config.getoption
    return opt("--enum-atoms"), opt("--enum-depth"), opt("--max-worlds")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}")
