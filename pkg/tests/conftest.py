import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def accept():
    """Record one acceptance line and assert it."""

    def record(number, title, ok, detail=""):
        line = f"[criterion {number:>2}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
