"""Shared fixtures and the acceptance-criterion summary.

Tests marked ``@pytest.mark.criterion(n, "title")`` are grouped by ``n``;
at the end of the run one PASS/FAIL line is printed per criterion.
"""

import json
from pathlib import Path

import pytest

ORACLE_DIR = Path(__file__).parent / "oracles"

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    entry = _CRITERIA.setdefault(n, {"title": title, "passed": 0, "failed": 0})
    if report.when == "call" or report.failed:
        entry["passed" if report.passed else "failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        ok = e["failed"] == 0 and e["passed"] > 0
        terminalreporter.write_line(
            f"criterion {n} {'PASS' if ok else 'FAIL'}: {e['title']} "
            f"({e['passed']} passed, {e['failed']} failed)")


@pytest.fixture(scope="session")
def frozen():
    """Values frozen by ``tests/oracles/generate_oracles.py`` (mpmath, 30 digits)."""
    return json.loads((ORACLE_DIR / "frozen_values.json").read_text())
