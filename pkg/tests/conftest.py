import pytest

# criterion number -> {summary: passed} for the tests covering it
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, summary): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, summary = marker.args
        parts = _CRITERIA.setdefault(number, {})
        parts[summary] = parts.get(summary, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        parts = _CRITERIA[number]
        ok = all(parts.values())
        detail = "; ".join(s if passed else f"{s} (failed)" for s, passed in parts.items())
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
