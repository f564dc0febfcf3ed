import random

import pytest

from linmonoid.monoid import make_block_diagonal, make_full

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def block12():
    """The block monoid {diag(alpha, A)} with alpha scalar and A in M_2."""
    return make_block_diagonal([1, 2])


@pytest.fixture(params=["full2", "full3", "full4", "block12", "block22", "block111"])
def family(request):
    return {
        "full2": lambda: make_full(2),
        "full3": lambda: make_full(3),
        "full4": lambda: make_full(4),
        "block12": lambda: make_block_diagonal([1, 2]),
        "block22": lambda: make_block_diagonal([2, 2]),
        "block111": lambda: make_block_diagonal([1, 1, 1]),
    }[request.param]()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
