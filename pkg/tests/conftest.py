import pytest

# filled by tests/test_acceptance.py, printed after the run so the lines land in the log
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def record_acceptance():
    def record(number: int, line: str):
        ACCEPTANCE_LINES[number] = line
        print(line)

    return record
