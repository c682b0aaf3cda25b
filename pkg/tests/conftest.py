"""Shared pytest hooks.

The acceptance module gets an explicit one-line verdict per criterion in the
terminal summary, pass or fail, independent of output capturing.
"""

ACCEPTANCE_FILE = "test_acceptance.py"

_verdicts = {}


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE not in report.nodeid:
        return
    if report.when == "call":
        _verdicts[report.nodeid] = "PASS" if report.passed else "FAIL"
    elif report.failed:
        _verdicts[report.nodeid] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_verdicts):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{_verdicts[nodeid]}: {name}")
