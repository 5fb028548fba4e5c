import os

import pytest

from finsemi.corpus import small_corpus, transformation_corpus

_LINES = pytest.StashKey[list]()


def pytest_addoption(parser):
    parser.addoption("--fb3-level4", action="store_true", default=False,
                     help="also check the band interval property at level 4 on FB(3)")


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture(scope="session")
def fb3_level4(request):
    return request.config.getoption("--fb3-level4") or os.environ.get("FINSEMI_FB3_LEVEL4") == "1"


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash[_LINES]

    def record(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_items():
    """Every labeled semigroup of order <= 4."""
    return list(small_corpus(4))


@pytest.fixture(scope="session")
def iso_items():
    """One semigroup per isomorphism class, order <= 4."""
    return list(small_corpus(4, dedup_iso=True))


@pytest.fixture(scope="session")
def transformation_items():
    return transformation_corpus(200, seed=0)


@pytest.fixture(scope="session")
def corpus(small_items, transformation_items):
    return small_items + transformation_items
