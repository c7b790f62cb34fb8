"""Shared test plumbing: surfaces the acceptance verdict lines.

The acceptance tests record one line per criterion; printing them from a
terminal-summary hook keeps them visible under captured runs.
"""

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
