import os

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

import time

import pytest

_ACCEPTANCE: list[dict] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.rep_call = report


@pytest.fixture
def criterion(request):
    """Times one acceptance criterion and records a pass/fail line for the summary."""
    record: dict = {}
    start = time.perf_counter()
    yield record
    record["elapsed"] = time.perf_counter() - start
    rep = getattr(request.node, "rep_call", None)
    record["passed"] = bool(rep and rep.passed)
    _ACCEPTANCE.append(record)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for rec in sorted(_ACCEPTANCE, key=lambda r: r.get("id", 0)):
        status = "PASS" if rec["passed"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {rec.get('id', '?'):>2}  {status}  {rec['elapsed']:7.2f}s / {rec.get('budget', 0):>5}s  {rec.get('text', '')}"
        )
