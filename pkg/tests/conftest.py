import pytest

from charrank import catalog

# criterion number -> (description, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def record(number: int, description: str, passed: bool) -> None:
    prev = ACCEPTANCE.get(number)
    ACCEPTANCE[number] = (description, passed and (prev is None or prev[1]))


@pytest.fixture(scope="session")
def records():
    return catalog.records()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {desc}")
