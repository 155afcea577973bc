import pytest

import helpers

ACCEPTANCE_LINES = []


@pytest.fixture
def sec3():
    return helpers.sec3()


@pytest.fixture
def all_five():
    return helpers.all_five()


@pytest.fixture
def small():
    return helpers.small()


@pytest.fixture
def singular():
    return helpers.singular()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
