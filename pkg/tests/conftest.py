import pytest

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: [int(t) if t.isdigit() else t for t in s.split()[1].rstrip(":").split(".")]):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """criterion(id, ok, summary) records and prints the line, then asserts."""

    def record(cid, ok, summary):
        line = f"{'PASS' if ok else 'FAIL'} {cid}: {summary}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record
