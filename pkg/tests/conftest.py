import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import freesolv
import freesolv.cli
import freesolv.geodesic  # noqa: F401
from freesolv.flows import flow_equal, path_flow
from freesolv.words import is_freely_reduced

GEODESIC_CALLS = {"count": 0, "failures": []}
CRITERIA: dict[int, tuple[str, str]] = {}

geodesic_module = sys.modules["freesolv.geodesic"]
_geodesic = geodesic_module.geodesic


@functools.wraps(_geodesic)
def checked_geodesic(w, *args, **kwargs):
    """Every geodesic computed anywhere in the suite is checked here."""
    res = _geodesic(w, *args, **kwargs)
    GEODESIC_CALLS["count"] += 1
    f = path_flow(w)
    problems = []
    if res.length != len(res.word):
        problems.append("length differs from word length")
    if res.length != f.total_variation() + 2 * len(res.forest):
        problems.append("length formula")
    if not flow_equal(path_flow(res.word), f):
        problems.append("not equal in M_r")
    if not is_freely_reduced(res.word):
        problems.append("not freely reduced")
    if problems:
        GEODESIC_CALLS["failures"].append((w, problems))
        raise AssertionError(f"geodesic({w}) violates: {', '.join(problems)}")
    return res


for mod in (freesolv, geodesic_module, freesolv.cli):
    mod.geodesic = checked_geodesic


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        CRITERIA[n] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if 5 in CRITERIA and GEODESIC_CALLS["failures"]:
        CRITERIA[5] = (CRITERIA[5][0], "FAIL")
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            title, status = CRITERIA[n]
            terminalreporter.write_line(f"criterion {n:2d} {status}  {title}")
    terminalreporter.write_line(
        f"geodesic calls checked: {GEODESIC_CALLS['count']}, "
        f"violations: {len(GEODESIC_CALLS['failures'])}")
