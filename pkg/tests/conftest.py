import re

import pytest

import _report


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    match = re.fullmatch(r"test_criterion_(\d+)", item.name)
    if match is None:
        return
    doc = (item.function.__doc__ or "").strip().splitlines()
    detail = doc[0].rstrip(".") if doc else item.name
    _report.record(
        int(match.group(1)),
        report.passed,
        f"{detail} ({report.duration:.2f}s)",
    )


def pytest_terminal_summary(terminalreporter):
    # Echo the acceptance lines after the test progress output, so they are
    # visible even when pytest captures stdout.
    if _report.LINES:
        terminalreporter.section("acceptance criteria")
        for line in _report.LINES:
            terminalreporter.line(line)
