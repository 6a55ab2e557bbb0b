import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion."""

    def log(number: int, status: str, detail: str):
        line = f"criterion {number:2d}: {status:4s} {detail}"
        _LINES[number] = line
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
