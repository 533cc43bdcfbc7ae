import functools

import pytest
from hypothesis import HealthCheck, settings

from htk.builtins import GALOIS_BUILTINS, load_builtin
from htk.comodule import make_galois
from htk.field import FieldSpec
from htk.torsor import derive_torsor

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

Q = FieldSpec.rationals()
F5 = FieldSpec.prime(5)


@functools.lru_cache(maxsize=None)
def galois(name):
    doc = load_builtin(name)
    return make_galois(doc.pick(None)[1])


@functools.lru_cache(maxsize=None)
def torsor(name):
    return derive_torsor(galois(name))


@pytest.fixture(params=GALOIS_BUILTINS)
def builtin_name(request):
    return request.param


# one pass/fail line per acceptance criterion at the end of the run
_criteria: dict[int, list[bool]] = {}
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    mark = report.user_properties and dict(report.user_properties).get("criterion")
    if mark:
        number, title = mark
        _titles[number] = title
        _criteria.setdefault(number, []).append(report.passed)


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark and ("criterion", tuple(mark.args)) not in item.user_properties:
        item.user_properties.append(("criterion", tuple(mark.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok = all(_criteria[number])
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {_titles[number]}")
