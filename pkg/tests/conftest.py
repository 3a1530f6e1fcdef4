"""Shared pytest wiring.

Collects the acceptance-criterion outcomes and prints one pass/fail line per
criterion at the end of the run, so the gate status is visible even when the
rest of the output is terse.
"""

from __future__ import annotations

import re

_RESULTS: dict[int, tuple[str, str]] = {}

_NODE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NODE.search(report.nodeid)
    if not m or report.when != "call":
        return
    number, slug = int(m.group(1)), m.group(2)
    if report.passed:
        outcome = "PASS"
    elif report.failed:
        outcome = "FAIL"
    else:
        outcome = "SKIP"
    _RESULTS[number] = (slug.replace("_", " "), outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        slug, outcome = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} ({slug}): {outcome}")
