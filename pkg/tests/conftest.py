import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from nonunital import library

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def k():
    return library.field(2)


@pytest.fixture
def kxk():
    return library.kxk(2)


@pytest.fixture
def m2():
    return library.m2(2)


def vec(*xs):
    return np.array(xs, dtype=np.int64)


# acceptance criteria: one pass/fail line per criterion at the end of the run

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n, title = getattr(report, "criterion", (None, None))
    if n is None:
        return
    ok = report.outcome == "passed"
    prev = _criteria.get(n, (title, True, ""))
    _criteria[n] = (title, prev[1] and ok, getattr(report, "criterion_note", "") or prev[2])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = tuple(mark.args)
        rep.criterion_note = item.stash.get(NOTE_KEY, "")


NOTE_KEY = pytest.StashKey[str]()


@pytest.fixture
def note(request):
    """Attach a one-line remark to the criterion summary line."""
    def put(text):
        request.node.stash[NOTE_KEY] = text
    return put


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok, remark = _criteria[n]
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if remark:
            line += f"  ({remark})"
        terminalreporter.write_line(line)
