"""Shared pytest hooks for the suite.

The acceptance tests record one PASS/FAIL entry per criterion here so the
terminal summary always shows the full scoreboard, whether or not stdout
capture is on.
"""

acceptance_results: dict[str, bool] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(acceptance_results):
        status = "PASS" if acceptance_results[name] else "FAIL"
        terminalreporter.write_line(f"{name}: {status}")
