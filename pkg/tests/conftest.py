import time

import pytest

_LINES = []


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.start = time.perf_counter()

    def done(self, passed, note=""):
        secs = time.perf_counter() - self.start
        status = "PASS" if passed else "FAIL"
        line = f"criterion {self.number:2d}: {status}  {self.title} ({secs:.1f}s)"
        if note:
            line += f"  [{note}]"
        _LINES.append((self.number, line))
        print(line)
        assert passed, line


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_LINES):
            terminalreporter.write_line(line)
