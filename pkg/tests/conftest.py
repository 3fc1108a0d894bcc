import pytest

from soficdual import load_fixture_graph, load_fixture_matrix


@pytest.fixture(scope="session")
def fig1():
    return load_fixture_graph("fig1.graph")


@pytest.fixture(scope="session")
def fig2():
    return load_fixture_graph("fig2.graph")


@pytest.fixture(scope="session")
def even():
    return load_fixture_graph("even.graph")


@pytest.fixture(scope="session")
def full2():
    return load_fixture_graph("full2.graph")


@pytest.fixture(scope="session")
def A():
    return load_fixture_matrix("A.mat")


@pytest.fixture(scope="session")
def B():
    return load_fixture_matrix("B.mat")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok, elapsed = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title} ({elapsed:.3f}s)")
