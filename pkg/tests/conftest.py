"""Shared pytest hooks for the acceptance gate.

The `criterion_report` fixture records one line per acceptance criterion and
asserts the verdict; the recorded lines are echoed in a terminal summary
section so they appear even when pytest captures per-test output.
"""

import pytest

_criterion_lines = []


@pytest.fixture
def criterion_report():
    def _report(n, ok, label, problems=()):
        line = f"criterion {n} {'PASS' if ok else 'FAIL'} {label}"
        _criterion_lines.append(line)
        print(line)
        assert ok, f"criterion {n} {label}: " + "; ".join(str(p) for p in problems)

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
