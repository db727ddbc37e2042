"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

import re

_results: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_(ac\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = m.group(1).upper()
    if report.when == "call" or report.failed:
        prev = _results.get(key, ("PASS", ""))[0]
        status = "FAIL" if report.failed or prev == "FAIL" else "PASS"
        _results[key] = (status, m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results, key=lambda k: int(k[2:])):
        status, desc = _results[key]
        terminalreporter.write_line(f"{key} {status}  {desc}")
