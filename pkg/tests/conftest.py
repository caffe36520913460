import itertools

import pytest

from qmsets.gf2core import Gf2Matrix, Universe
from qmsets.observables import Attribute
from qmsets.states import make_basis, standard_basis


@pytest.fixture
def U():
    return Universe("abc")


@pytest.fixture
def A(U):
    return Gf2Matrix.from_rows(U, [[1, 1, 0], [1, 1, 1], [0, 1, 1]])


@pytest.fixture
def three_bases(U):
    return [
        standard_basis(U),
        make_basis("U′", [U.parse(s) for s in ("{a,b}", "{b,c}", "{a,b,c}")]),
        make_basis("U″", [U.parse(s) for s in ("{a}", "{a,b}", "{a,c}")], suffix="″"),
    ]


@pytest.fixture
def f_ordinal(U):
    return Attribute(U, {"a": 1, "b": 2, "c": 3})


@pytest.fixture
def chi_bc(U):
    return Attribute.characteristic(U.parse("{b,c}"))


@pytest.fixture
def chi_ab(U):
    return Attribute.characteristic(U.parse("{a,b}"))


def universes(max_n=4):
    return [Universe("abcd"[:n]) for n in range(1, max_n + 1)]


def all_attributes(universe, values=(0, 1, 2, 3)):
    for combo in itertools.product(values, repeat=universe.n):
        yield Attribute(universe, dict(zip(universe.labels, combo)))


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered exit criterion")
    config._acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key = marker.args
    results = item.config._acceptance_results
    if report.when == "call" or (report.when == "setup" and report.failed):
        results[key] = results.get(key, True) and report.passed


def pytest_terminal_summary(terminalreporter, config):
    results = config._acceptance_results
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(results.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC{number:>2}  {title}")
