import pytest

# (criterion, passed, detail) rows collected by test_acceptance.py
ACCEPTANCE_ROWS = []


@pytest.fixture
def acceptance():
    def record(name, passed, detail=""):
        ACCEPTANCE_ROWS.append((name, passed, detail))
        line = f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_ROWS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_ROWS:
        line = f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        terminalreporter.write_line(line)
