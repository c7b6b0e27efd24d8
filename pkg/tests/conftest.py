import pytest

from ordiv.theorems import Bounds, build_corpus

acceptance_key = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(Bounds())


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [g for g in corpus if g.order <= 24]


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig):
    return pytestconfig.stash.setdefault(acceptance_key, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line[1])
