import functools

import pytest

from surfineq import families


@functools.lru_cache(maxsize=None)
def build(name: str, n: int = 4096, **params):
    return families.make_family(name, params, n)


@pytest.fixture(scope="session")
def unit_sphere():
    return build("sphere", R=1.0)


@pytest.fixture(scope="session")
def cigar01():
    return build("cigar", eps=0.01)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
