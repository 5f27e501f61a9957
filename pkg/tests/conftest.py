import pytest

from qrjulia.qrmap import params_new

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def p():
    return params_new(1.5, 0.05)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
