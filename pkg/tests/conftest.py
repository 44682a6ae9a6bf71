import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, tuple[int, str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _criteria.get(item.nodeid)
        if prev is None or prev[2] == "PASS":
            notes = "; ".join(str(v) for k, v in item.user_properties if k == "note")
            _criteria[item.nodeid] = (number, text, "PASS" if report.outcome == "passed" else "FAIL", notes)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, verdict, notes in sorted(_criteria.values()):
        tail = f"  [{notes}]" if notes else ""
        terminalreporter.write_line(f"criterion {number}: {verdict}  {text}{tail}")
