"""Per-criterion PASS/FAIL summary for the acceptance suite."""
from __future__ import annotations

import re
from collections import OrderedDict

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_results: "OrderedDict[int, bool]" = OrderedDict()


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        _results[n] = _results.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _results[n] else 'FAIL'}")
