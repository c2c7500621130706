import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the assertion itself stays in the test."""

    def record(label: str, ok: bool, detail: str = ""):
        CRITERIA.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
