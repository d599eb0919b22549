import pytest

from drinfeld.algebra import Ideal
from drinfeld.quotient import build_quotient

from .helpers import PAIR, level, newforms


@pytest.fixture(scope="session")
def coprime_pair():
    q, s1, s2 = PAIR
    f = newforms(q, s1, "a")[0]
    g = newforms(q, s2, "b")[0]
    I = Ideal(q, level(q, s1).F.pmul(level(q, s1).gen, level(q, s2).gen))
    return f, g, build_quotient(I)


def pytest_terminal_summary(terminalreporter):
    from .helpers import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
