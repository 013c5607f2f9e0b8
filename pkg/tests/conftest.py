import pytest

from .graphs import graph_l, graph_crossed, graph_n


@pytest.fixture
def L():
    return graph_l()


@pytest.fixture
def N():
    return graph_n()


@pytest.fixture
def M():
    return graph_crossed()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
