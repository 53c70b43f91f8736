import pytest

from hyperver.bigfloat import EvalContext

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def ctx():
    return EvalContext(192)


@pytest.fixture(scope="session")
def ctx128():
    return EvalContext(128)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
