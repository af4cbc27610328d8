import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

_LINES = []


class Criterion:
    """Times one acceptance criterion and records a PASS/FAIL line."""

    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.note = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        within = self.limit is None or elapsed < self.limit
        ok = exc_type is None and within
        extra = f" {self.note}" if self.note else ""
        if exc_type is None and not ok:
            extra += " (time limit exceeded)"
        bound = "no limit" if self.limit is None else f"< {self.limit}s"
        line = (f"criterion {self.number:>2}: {'PASS' if ok else 'FAIL'} "
                f"[{elapsed:.2f}s {bound}] {self.title}{extra}")
        _LINES.append(line)
        print(line)
        if exc_type is None:
            assert ok, line
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
