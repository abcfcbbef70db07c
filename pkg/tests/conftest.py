import time

import pytest

_results: dict = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "setup" and call.excinfo is None:
        return
    if call.when == "teardown":
        return
    number, title = marker.args
    entry = _results.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "tests": 0})
    entry["ok"] = entry["ok"] and call.excinfo is None
    entry["seconds"] += call.stop - call.start
    entry["tests"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        e = _results[number]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {status}  {e['title']}  ({e['tests']} tests, {e['seconds']:.2f} s)"
        )


@pytest.fixture
def timer():
    start = time.perf_counter()
    return lambda: time.perf_counter() - start
