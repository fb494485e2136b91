"""Shared fixtures, plus a PASS/FAIL line per acceptance criterion in the terminal summary."""

from pathlib import Path

import pytest

from hilfor import bench
from hilfor.catalog import alg2, alg3, lambda5

DATA = Path(__file__).parent / "data"

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when not in ("setup", "call"):
        return
    n, title = mark.args
    failed = call.excinfo is not None
    prev = _criteria.get(n, (title, True))
    if call.when == "call" or failed:
        _criteria[n] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def hilbert_upto8():
    """Every Hilbert algebra with at most 8 elements, up to isomorphism."""
    return [A for n in range(1, 9) for A in bench.enumerate_hilbert_algebras(n, cap=8)]


@pytest.fixture(scope="session")
def bph8():
    return bench.enumerate_bph_algebras(8)


@pytest.fixture(scope="session")
def hforests5():
    return bench.enumerate_hforests(5)


@pytest.fixture(scope="session")
def hforests4():
    return bench.enumerate_hforests(4)


@pytest.fixture
def ALG2():
    return alg2()


@pytest.fixture
def ALG3():
    return alg3()


@pytest.fixture
def LAMBDA5():
    return lambda5()


@pytest.fixture
def data_dir():
    return DATA
