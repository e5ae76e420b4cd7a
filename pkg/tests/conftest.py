import pytest

_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_KEY] = {}


@pytest.fixture
def record(request):
    """Store one summary line for an acceptance criterion."""
    lines = request.config.stash[_KEY]

    def _record(number: int, passed: bool, detail: str) -> None:
        lines[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_KEY, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
