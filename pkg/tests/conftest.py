import pytest

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    """Store one pass/fail line per acceptance criterion and echo it."""

    def _record(k: int, passed: bool, detail: str) -> None:
        line = f"criterion {k}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE[k] = line
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[k])
