from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: dict[str, str] = {}


@pytest.fixture
def fixtures():
    return FIXTURES


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.skipped:
        _criteria.setdefault(label, "SKIP")
    elif report.failed:
        _criteria[label] = "FAIL"
    elif report.when == "call":
        _criteria.setdefault(label, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(f"{_criteria[label]:4}  {label}")
