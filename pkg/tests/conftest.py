import pytest

from hilbert_decomp import parse_series

from known_series import EXAMPLE1, EXAMPLE2, EXAMPLE3

@pytest.fixture
def ex1():
    return parse_series(EXAMPLE1)


@pytest.fixture
def ex2():
    return parse_series(EXAMPLE2)


@pytest.fixture
def ex3():
    return parse_series(EXAMPLE3)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report.outcome
    elif "test_acceptance" in report.nodeid and report.outcome == "failed":
        _acceptance[report.nodeid] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
