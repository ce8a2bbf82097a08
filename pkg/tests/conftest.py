import pytest

from klrverify.cartan import validate_cartan
from klrverify.functors import FunctorCase, QuotientCache
from klrverify.klr import KLRAlgebra

SL2 = [[2]]
SL3 = [[2, -1], [-1, 2]]
B2 = [[2, -1], [-2, 2]]
AFF_A1 = [[2, -2], [-2, 2]]


def algebra(matrix, labels=None):
    return KLRAlgebra(validate_cartan(matrix, labels=labels))


_caches: dict = {}


def functor_case(matrix, lam, beta, i, flip=False):
    """FunctorCase sharing one quotient cache per (matrix, lambda) within the session."""
    key = (repr(matrix), tuple(lam))
    if key not in _caches:
        _caches[key] = QuotientCache(algebra(matrix), lam)
    return FunctorCase(_caches[key], beta, i, flip_eta_sign=flip)


@pytest.fixture(scope="session")
def sl2():
    return algebra(SL2, labels=["i"])


@pytest.fixture(scope="session")
def sl3():
    return algebra(SL3)


@pytest.fixture(scope="session")
def b2():
    return algebra(B2)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
