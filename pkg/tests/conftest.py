from __future__ import annotations

import pytest

from listcrit import graph6
from oracles import fixture_lines


def load(name: str):
    return [graph6.decode(line) for line in fixture_lines(name)]


@pytest.fixture(scope="session")
def upto5():
    return load("upto5_all.g6")


@pytest.fixture(scope="session")
def upto6():
    return load("upto6_all.g6")


@pytest.fixture(scope="session")
def upto7():
    return load("upto7_all.g6")


# -- acceptance summary: one line per criterion ------------------------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when not in ("setup", "call"):
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "details": [], "ran": False})
    if rep.when == "call":
        entry["ran"] = True
    if rep.failed:
        entry["ok"] = False
    entry["details"] += [v for k, v in rep.user_properties if k == "detail"]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "FAIL" if not e["ok"] else ("PASS" if e["ran"] else "NOT RUN")
        detail = "; ".join(e["details"])
        terminalreporter.write_line(f"criterion {number}: {status}  {e['title']}" + (f"  [{detail}]" if detail else ""))
