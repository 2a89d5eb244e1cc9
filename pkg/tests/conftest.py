import pytest

# criterion number -> (title, outcome); filled in by the report hook below
CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): one of the numbered acceptance criteria")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    n, title = mark.args
    CRITERIA[n] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, status = CRITERIA[n]
        terminalreporter.write_line(f"{status}  criterion {n:2d}: {title}")
    passed = sum(1 for _, s in CRITERIA.values() if s == "PASS")
    terminalreporter.write_line(f"{passed}/{len(CRITERIA)} criteria passed")
