import pytest

# acceptance outcomes, filled in by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {k}: {label}")


@pytest.fixture
def record_criterion():
    def record(k, label, ok):
        ACCEPTANCE[k] = (ok, label)
    return record
