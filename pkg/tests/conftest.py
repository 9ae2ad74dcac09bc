import time
from contextlib import contextmanager

import pytest

_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture
def criterion(request):
    """Time an acceptance check, print its single verdict line and enforce the budget."""
    lines = request.config.stash[_LINES_KEY]

    @contextmanager
    def run(number: int, budget: float):
        start = time.perf_counter()
        completed = False
        try:
            yield
            completed = True
        finally:
            elapsed = time.perf_counter() - start
            ok = completed and elapsed < budget
            line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, budget {budget:g}s)"
            print(line)
            lines.append(line)
        assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s, budget {budget:g}s"

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
