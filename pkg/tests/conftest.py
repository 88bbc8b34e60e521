import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record the status line for one acceptance criterion."""
    def record(number: int, ok: bool, detail: str) -> None:
        _LINES[number] = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
