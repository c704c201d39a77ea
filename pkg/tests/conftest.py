import pytest

from greval.corpus import load_mini_corpus


@pytest.fixture(scope="session")
def mini():
    return load_mini_corpus()


@pytest.fixture(scope="session")
def fig1(mini):
    return list(mini[0].grs)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
