import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False, help="run long-running rows")


def pytest_configure(config):
    config._criteria = {}


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    results = item.config._criteria.setdefault(name, [])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        results.append(report.outcome)


def pytest_terminal_summary(terminalreporter, config):
    criteria = getattr(config, "_criteria", {})
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(criteria, key=lambda s: (int(s.split()[0]), s)):
        outcomes = criteria[name]
        if all(o == "skipped" for o in outcomes):
            status = "SKIP"
        elif all(o in ("passed", "skipped") for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"{status}  criterion {name}")
