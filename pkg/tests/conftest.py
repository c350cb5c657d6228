"""Per-criterion pass/fail lines for the acceptance suite."""

from __future__ import annotations

from collections import OrderedDict

import pytest

_results: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test covers")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, title = mark.args
            _results.setdefault(number, {"title": title, "outcomes": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if not mark:
        return
    entry = _results[mark.args[0]]
    if report.when == "call" or report.failed or report.skipped:
        entry["outcomes"].append(
            (report.outcome, getattr(report, "duration", 0.0), item.user_properties))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, entry in sorted(_results.items()):
        outs = entry["outcomes"]
        if not outs:
            status = "NOT RUN"
        elif all(o == "passed" for o, _, _ in outs):
            status = "PASS"
        elif any(o == "failed" for o, _, _ in outs):
            status = "FAIL"
        else:
            status = "SKIP"
        elapsed = sum(d for _, d, _ in outs)
        notes = "; ".join(str(v) for _, _, props in outs for k, v in props if k == "note")
        line = f"[{status:<4}] criterion {number:>2}: {entry['title']} ({elapsed:.1f}s)"
        tr.write_line(line + (f"  {notes}" if notes else ""))
