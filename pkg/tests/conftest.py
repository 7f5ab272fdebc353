import pytest

from tmbench import samples


@pytest.fixture
def m_loop():
    return samples.m_loop()


@pytest.fixture
def m_halt():
    return samples.m_halt()


@pytest.fixture
def m_threes():
    return samples.m_threes()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
