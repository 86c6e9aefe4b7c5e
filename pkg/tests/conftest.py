import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
