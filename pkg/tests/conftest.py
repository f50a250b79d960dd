"""Shared test plumbing: the acceptance-criteria summary lines.

Each acceptance test records one pass/fail line; they are printed in a
dedicated section after the run so they survive pytest's output capture.
"""

_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
